#pragma once

namespace msfou {

/// Worker count for the OpenMP kernels. 1 selects the serial reference
/// path; 0 defers to the OpenMP runtime default.
struct Parallelism {
  int workers = 0;

  bool serial() const { return workers == 1; }
  static Parallelism serial_reference() { return Parallelism{1}; }
};

/// Threads the OpenMP runtime would use for `p`.
int resolve_workers(Parallelism p);

}  // namespace msfou
