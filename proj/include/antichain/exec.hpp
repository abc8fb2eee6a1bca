#pragma once

namespace antichain {

/// Which kernel implementation to run. `serial` is the reference the
/// OpenMP kernels are tested against; both produce identical results.
enum class Exec { serial, parallel };

} // namespace antichain
