#pragma once

#include <cstdint>

namespace bfp {

// Splittable counter-based generator. Output i of a stream is a fixed
// avalanche mix of (key, i), where the key is derived from the master seed
// and a caller-chosen stream id. Streams with distinct ids are independent
// for all practical purposes and never share state, so disjoint ids can be
// drawn on concurrently without coordination. A stream is single-owner:
// callers must not share one instance across threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform();

  // Standard normal variate (Marsaglia polar, one spare cached).
  double normal();

  // Exponential with the given rate.
  double exponential(double rate);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bfp
