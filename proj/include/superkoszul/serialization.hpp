#pragma once

#include <json.hpp>

#include "superkoszul/series.hpp"

namespace superkoszul {

/// Canonical JSON form: a list of terms
///   {"coeff": "p/q", "lambda": n,
///    "monomial": {"even": {"x1": 2}, "odd": ["xs1","xs2"]}}
/// with terms in monomial order and odd factors in canonical order.
/// Round-trips bit-exactly.
nlohmann::ordered_json series_to_json(const SuperSeries& s);

SuperSeries series_from_json(ContextPtr ctx, TruncationPolicy trunc, const nlohmann::json& j);

}  // namespace superkoszul
