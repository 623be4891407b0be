#include <iostream>

#include <quadrikit/cli.hpp>

int main(int argc, char **argv) { return quadrikit::run_cli(argc, argv, std::cout, std::cerr); }
