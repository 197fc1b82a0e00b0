#pragma once

namespace ftl {

struct EncodeOptions {
  // Per-vertex loops run under OpenMP when set; the serial order is the reference.
  bool parallel = true;
};

}  // namespace ftl
