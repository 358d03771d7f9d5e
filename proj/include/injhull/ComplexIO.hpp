#pragma once

#include "injhull/TightSpan.hpp"

#include <json.hpp>

#include <string>

namespace injhull {

/// Function as {"label": "p/q", ...}.
nlohmann::json function_json(const FiniteMetricSpace& space, const RationalVector& f);

/// {"vertices": [{"values": {...}}], "cells": [{"dim": k, "edges": [["x","y"], ...],
///  "vertex_ids": [...]}], "f_vector": [...]}
nlohmann::json to_json(const TightSpanComplex& complex);

/// One undirected DOT graph per cell; loops are drawn red.
std::string to_dot(const TightSpanComplex& complex);
std::string to_dot(const FiniteMetricSpace& space, const EqualityGraph& graph, const std::string& name);

}  // namespace injhull
