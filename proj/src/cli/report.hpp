#pragma once

#include "solvgeo/autgrp.hpp"
#include "solvgeo/canon.hpp"
#include "solvgeo/cli.hpp"
#include "solvgeo/types.hpp"

namespace solvgeo::cli::detail {

Json to_json(const Vector& v);
Json to_json(const Matrix& m);  // row-major nested arrays
Json to_json(const CanonicalMetric& c);
Json to_json(const Automorphism& F);

}  // namespace solvgeo::cli::detail
