#pragma once

// Umbrella header.

#include "sep/algebra.hpp"
#include "sep/budget.hpp"
#include "sep/expr.hpp"
#include "sep/flatness.hpp"
#include "sep/ideal.hpp"
#include "sep/linalg.hpp"
#include "sep/manifest.hpp"
#include "sep/modgb.hpp"
#include "sep/module.hpp"
#include "sep/monomial.hpp"
#include "sep/oracle.hpp"
#include "sep/order.hpp"
#include "sep/poly.hpp"
#include "sep/ringmap.hpp"
#include "sep/run.hpp"
#include "sep/scalar.hpp"
#include "sep/scheme.hpp"
