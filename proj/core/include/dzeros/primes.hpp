#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dzeros {

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;

/// Primes <= limit, backed by a process-wide sieve cache.
class PrimeList {
 public:
  PrimeList(std::shared_ptr<const std::vector<std::uint32_t>> storage, std::size_t count)
      : storage_(std::move(storage)), count_(count) {}

  std::span<const std::uint32_t> view() const { return {storage_->data(), count_}; }
  std::size_t size() const { return count_; }
  std::uint32_t operator[](std::size_t i) const { return (*storage_)[i]; }
  auto begin() const { return view().begin(); }
  auto end() const { return view().end(); }

 private:
  std::shared_ptr<const std::vector<std::uint32_t>> storage_;
  std::size_t count_;
};

/// All primes <= limit in increasing order; ResourceError above kMaxSieveLimit.
PrimeList generate_primes(std::uint64_t limit);

/// Moebius function by trial division.
int moebius(std::uint64_t n);

}  // namespace dzeros
