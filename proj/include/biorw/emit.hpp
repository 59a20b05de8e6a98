#pragma once

#include "biorw/classes.hpp"
#include "biorw/model.hpp"

#include <string>

namespace biorw {

/// Serialize a model (expanded or not) back to .bmodel text: formalism
/// line, one values block sorted by value name, state, then rule slots
/// in order. Byte-stable: equal inputs produce identical bytes.
std::string emit_model(const TypeEnv& gamma, const Model& model);

} // namespace biorw
