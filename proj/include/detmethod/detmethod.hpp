/**
 * @file detmethod.hpp
 * @brief Umbrella header for the library (everything except the JSON report layer).
 */
#pragma once

#include "detmethod/applications.hpp"
#include "detmethod/bareiss.hpp"
#include "detmethod/certificate.hpp"
#include "detmethod/enumerate.hpp"
#include "detmethod/errors.hpp"
#include "detmethod/exponent.hpp"
#include "detmethod/expsets.hpp"
#include "detmethod/fit.hpp"
#include "detmethod/gcd.hpp"
#include "detmethod/matrix.hpp"
#include "detmethod/numeric.hpp"
#include "detmethod/pipeline.hpp"
#include "detmethod/point.hpp"
#include "detmethod/polynomial.hpp"
#include "detmethod/univariate.hpp"
