#pragma once

#include <string>

#include "secgame/model.hpp"

namespace secgame {

// Instance documents look like
//   {"nodes":[{"theta":1.0,"alpha":3.0},...],
//    "edges":[{"u":0,"v":1,"w":0.5},...],
//    "resource":2.0}
// and strategy documents like
//   {"support":[[1.0,1.0,0.0],...],"probs":[0.5,...]}
//
// Parsing throws ParseError for malformed documents; structurally sound but
// invalid data (theta = 0, duplicate edges, ...) surfaces as ContractError
// from the Instance constructor.

Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

MixedStrategy strategy_from_json(const std::string& text);
std::string strategy_to_json(const MixedStrategy& m);
MixedStrategy load_strategy(const std::string& path);
void save_strategy(const MixedStrategy& m, const std::string& path);

}  // namespace secgame
