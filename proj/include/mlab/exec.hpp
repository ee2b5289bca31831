#pragma once

namespace mlab {

/// Serial loops are the reference; the OpenMP kernels distribute whole
/// sweep elements, so both produce bit-identical results in input order.
enum class Exec { Serial, Parallel };

}  // namespace mlab
