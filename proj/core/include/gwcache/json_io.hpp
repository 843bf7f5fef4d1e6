#pragma once

#include <string>

#include "gwcache/aux_channel.hpp"
#include "gwcache/pmf.hpp"

namespace gwcache {

// Pair pmf file format: {"n1": int, "n2": int, "p": [[row-major floats]]}.
// Serialization uses shortest round-trip float formatting, so a parse/serialize
// cycle of a serialized pmf is byte-identical.
std::string pmf_to_json(const JointPmf2& j);
JointPmf2 pmf_from_json(const std::string& text);

// Auxiliary channel file format: {"nu": int, "w": [[nu rows of n1*n2 columns]]}.
std::string aux_to_json(const AuxChannel& a);
AuxChannel aux_from_json(const std::string& text);

}  // namespace gwcache
