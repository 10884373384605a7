#pragma once

#include <string>
#include <string_view>

#include "paradigm/model.hpp"

namespace paradigm {

enum class Variant { kBasic, kReturn, kSimple };

/// Throws std::invalid_argument on an unknown name.
Variant parse_variant(std::string_view name);
std::string to_string(Variant v);

/// The client/server model with `clients` clients Client1..Clientn sharing
/// the partition CS, and the conductor Server.
///
/// kReturn lets a waiting client give up (Waiting -return-> Out); kSimple
/// uses the two-phase partition and a server without the check step.
/// Throws std::invalid_argument when clients < 1.
ParadigmModel generate_model(Variant variant, int clients);

}  // namespace paradigm
