#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "poly.hpp"
#include "parse.hpp"
#include "matrix.hpp"
#include "groebner.hpp"
#include "presentation.hpp"
#include "quadform.hpp"
#include "qffile.hpp"
#include "sampling.hpp"
#include "clifford.hpp"
#include "report.hpp"
#include "cliffmod.hpp"
#include "suites.hpp"
#include "geometry.hpp"
