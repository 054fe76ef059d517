#pragma once

// JSON problem/report schemas and CSV density export.

#include <string>

#include "json.hpp"
#include "l2approx/cw.hpp"

namespace l2approx {

using json = nlohmann::json;

/// Rounds to 12 significant digits so serialized reports are stable.
double round12(double x);

Group parse_group(const json& j);
json group_to_json(const Group& g);

/// Element payloads: null for the trivial group, an integer residue, an
/// integer vector, a free word (signed generator list or "a b^-1" string),
/// a table index or name, or an array of factor payloads for products.
GroupElement parse_element(const Group& g, const json& j);
json element_to_json(const Group& g, const GroupElement& x);

/// List of {"word": payload, "re": "p/q", "im": "p/q"}.
RingElement parse_ring_element(const Group& g, const json& j);
json ring_element_to_json(const RingElement& x);

/// {"rows": d, "cols": d2, "entries": [[ring element, ...], ...]}
RingMatrix parse_matrix(const Group& g, const json& j);
json matrix_to_json(const RingMatrix& m);

/// {"target": group, "images": [payload per source generator]}
Homomorphism parse_homomorphism(const Group& source, const json& j);

/// {"group": ..., "cells": [n_0, n_1, ...], "boundaries": [matrix, ...]}
ChainComplexSpec parse_complex(const json& j);

json density_to_json(const SpectralDensity& f);
/// "lambda,F" header followed by one row per jump with the cumulative F.
std::string density_to_csv(const SpectralDensity& f);

}  // namespace l2approx
