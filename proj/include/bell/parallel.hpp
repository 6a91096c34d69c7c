#pragma once

namespace bell {

/// Selects between the OpenMP kernel and the plain serial loop. Both
/// produce identical results; the serial path is the reference.
enum class Exec { serial, parallel };

/// Sets the OpenMP worker count (no-op for n <= 0).
void set_worker_count(int n);
int worker_count();

} // namespace bell
