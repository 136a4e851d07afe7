#include "dzeros/primes.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "dzeros/errors.hpp"

namespace dzeros {
namespace {

// Odd-only sieve of Eratosthenes.
std::vector<std::uint32_t> sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  const std::uint64_t slots = (limit - 1) / 2;  // slot i holds 2i + 3
  std::vector<bool> composite(slots, false);
  for (std::uint64_t i = 0; i < slots; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 3;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[(m - 3) / 2] = true;
  }
  return primes;
}

struct SieveCache {
  std::mutex mutex;
  std::uint64_t limit = 0;
  std::shared_ptr<const std::vector<std::uint32_t>> primes = std::make_shared<std::vector<std::uint32_t>>();
};

SieveCache& cache() {
  static SieveCache c;
  return c;
}

}  // namespace

PrimeList generate_primes(std::uint64_t limit) {
  if (limit > kMaxSieveLimit) {
    throw ResourceError("generate_primes: limit " + std::to_string(limit) + " exceeds the sieve cap of 1e9");
  }
  SieveCache& c = cache();
  const std::lock_guard<std::mutex> lock(c.mutex);
  if (limit > c.limit) {
    c.primes = std::make_shared<const std::vector<std::uint32_t>>(sieve(limit));
    c.limit = limit;
  }
  const auto end = std::upper_bound(c.primes->begin(), c.primes->end(), limit);
  return PrimeList(c.primes, static_cast<std::size_t>(end - c.primes->begin()));
}

int moebius(std::uint64_t n) {
  if (n == 0) throw DomainError("moebius: n must be positive");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

}  // namespace dzeros
