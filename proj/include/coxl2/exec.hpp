#pragma once

namespace coxl2 {

/// Selects between the OpenMP kernel and its serial reference. Both must
/// produce identical results; the serial path exists for testing and for
/// builds without OpenMP.
enum class Exec { Serial, Parallel };

/// Sets the OpenMP thread count used by parallel kernels (n <= 0 keeps the
/// runtime default).
void set_thread_count(int n);

int thread_count();

} // namespace coxl2
