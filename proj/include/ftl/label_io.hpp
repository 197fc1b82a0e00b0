#pragma once

#include <optional>

#include "ftl/bitio.hpp"
#include "ftl/hld.hpp"

namespace ftl {

void put_eid(BitWriter& w, const ExtendedId& e);
ExtendedId get_eid(BitReader& r);
void put_opt_eid(BitWriter& w, const std::optional<ExtendedId>& e);
std::optional<ExtendedId> get_opt_eid(BitReader& r);

}  // namespace ftl
