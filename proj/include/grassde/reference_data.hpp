#pragma once

#include <cstdint>
#include <string_view>

#include "grassde/manifold.hpp"

namespace grassde::refdata {

// Fixed 20 x 5 reference frames used by the benchmark experiments, stored
// verbatim as 4-decimal CSV text. The stored values are orthonormal only to
// about 2e-4, so loading goes through accept_reference().

std::string_view p1_csv();
std::string_view p2_csv();
std::string_view p3_csv();

/// FNV-1a 64-bit hash, used to pin the embedded text.
std::uint64_t fnv1a64(std::string_view text);

ReferenceFrame load_p1();
ReferenceFrame load_p2();
ReferenceFrame load_p3();

}  // namespace grassde::refdata
