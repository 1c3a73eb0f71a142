#pragma once

#include "double_double.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "jet.hpp"
#include "family.hpp"
#include "transform.hpp"
#include "catalog.hpp"
#include "parallel.hpp"
#include "dynamics.hpp"
#include "bifurcation.hpp"
#include "schwarzian.hpp"
#include "harness.hpp"
#include "report.hpp"
