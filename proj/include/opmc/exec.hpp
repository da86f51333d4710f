#pragma once

namespace opmc {

// Kernels with a parallel path keep a serial reference selected by this flag.
enum class Exec { serial, parallel };

}  // namespace opmc
