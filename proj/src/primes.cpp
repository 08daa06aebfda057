#include "tfab/primes.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>

#include "tfab/errors.hpp"
#include "tfab/limits.hpp"

namespace tfab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

namespace {

class PrimeTable {
 public:
  // Ensure every prime <= bound is present.
  void cover_value(std::uint64_t bound) {
    {
      std::shared_lock lock(mu_);
      if (bound <= sieved_) return;
    }
    std::unique_lock lock(mu_);
    grow_locked(bound);
  }

  void cover_count(std::uint64_t n) {
    {
      std::shared_lock lock(mu_);
      if (primes_.size() >= n) return;
    }
    std::unique_lock lock(mu_);
    while (primes_.size() < n) {
      std::uint64_t cap = limits().prime_cap;
      if (sieved_ >= cap)
        fail(Errc::capacity_exceeded,
             "prime #" + std::to_string(n) + " lies above prime_cap " + std::to_string(cap));
      grow_locked(std::min(cap, std::max<std::uint64_t>(1024, sieved_ * 2)));
    }
  }

  std::uint64_t at(std::uint64_t n) {
    cover_count(n);
    std::shared_lock lock(mu_);
    return primes_[n - 1];
  }

  std::uint64_t index_of(std::uint64_t p) {
    cover_value(p);
    std::shared_lock lock(mu_);
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p)
      fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
    return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
  }

  std::vector<std::uint64_t> up_to(std::uint64_t bound) {
    cover_value(bound);
    std::shared_lock lock(mu_);
    auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.begin(), end};
  }

 private:
  void grow_locked(std::uint64_t bound) {
    if (bound <= sieved_) return;
    if (bound > limits().prime_cap)
      fail(Errc::capacity_exceeded, "primes up to " + std::to_string(bound) +
                                        " exceed prime_cap " + std::to_string(limits().prime_cap));
    std::vector<bool> composite(bound + 1, false);
    primes_.clear();
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    sieved_ = bound;
  }

  std::shared_mutex mu_;
  std::vector<std::uint64_t> primes_;
  std::uint64_t sieved_ = 1;
};

PrimeTable& table() {
  static PrimeTable t;
  return t;
}

}  // namespace

std::uint64_t nth_prime(std::uint64_t n) {
  if (n == 0) fail(Errc::invalid_argument, "prime indices start at 1");
  return table().at(n);
}

std::uint64_t prime_index(std::uint64_t p) { return table().index_of(p); }

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) { return table().up_to(bound); }

std::vector<PrimePower> factor(const BigInt& n) {
  if (n == 0) fail(Errc::invalid_argument, "cannot factor 0");
  BigInt rest = abs(n);
  std::vector<PrimePower> out;
  const std::uint64_t cap = limits().prime_cap;
  auto finish_prime = [&] {
    if (rest == 1) return;
    if (!rest.fits_ulong_p() || rest.get_ui() > cap)
      fail(Errc::capacity_exceeded,
           "prime factor " + rest.get_str() + " exceeds prime_cap " + std::to_string(cap));
    out.push_back({rest.get_ui(), 1});
  };
  std::uint64_t bound = 1024;
  std::uint64_t tried = 1;  // every prime <= tried has been divided out
  for (;;) {
    for (std::uint64_t p : primes_up_to(std::min(bound, cap))) {
      if (p <= tried) continue;
      if (BigInt(static_cast<unsigned long>(p)) * p > rest) {
        finish_prime();
        return out;
      }
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      if (e > 0) out.push_back({p, e});
      tried = p;
    }
    if (rest == 1) return out;
    if (bound >= cap)
      fail(Errc::capacity_exceeded,
           "cannot factor " + n.get_str() + " within prime_cap " + std::to_string(cap));
    bound = std::min(cap, bound * 8);
  }
}

}  // namespace tfab
