//! Benchmarks for the exact-arithmetic kernels.
