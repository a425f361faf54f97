#pragma once

#include <string>

#include <json.hpp>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/decoupling.hpp"
#include "chaoscalc/elementary_operator.hpp"
#include "chaoscalc/mc.hpp"
#include "chaoscalc/multiple_integral.hpp"

namespace chaoscalc {

// JSON shapes (documented in the README):
//   space:   {"d": 2, "norm": "l2"}          (built-in norm tags only)
//   chaos:   {"n": 3, "space": ..., "terms": {"1:2,3:1": [...], "": [...]}}
//   operator:{"m": 2, "n": 3, "space": ..., "table": {"1,2": [...]}}
//   tetra:   {"m": 2, "space": ..., "table": {"1,2": [...]}}
//   measure: {"masses": [...]}
//   instance:{"case": "symmetric", "m": 2, "n": 3, "space": ..., "table": ...}

void to_json(nlohmann::json& j, const BanachSpaceModel& space);
void from_json(const nlohmann::json& j, BanachSpaceModel& space);

void to_json(nlohmann::json& j, const ChaosExpansion& f);
void from_json(const nlohmann::json& j, ChaosExpansion& f);

void to_json(nlohmann::json& j, const ElementaryOperator& t);
void from_json(const nlohmann::json& j, ElementaryOperator& t);

void to_json(nlohmann::json& j, const TetraSimpleFunction& f);
void from_json(const nlohmann::json& j, TetraSimpleFunction& f);

void to_json(nlohmann::json& j, const MeasureSpaceModel& m);
void from_json(const nlohmann::json& j, MeasureSpaceModel& m);

void to_json(nlohmann::json& j, const EstimateResult& r);
void from_json(const nlohmann::json& j, EstimateResult& r);

void to_json(nlohmann::json& j, const DecouplingInstance& inst);
void from_json(const nlohmann::json& j, DecouplingInstance& inst);

/// "1,2,2" <-> {1,2,2}; "" is the empty index.
std::string index_to_string(const MultiIndex& index);
MultiIndex index_from_string(const std::string& text);

}  // namespace chaoscalc
