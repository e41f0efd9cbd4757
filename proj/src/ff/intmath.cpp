#include "lietype/intmath.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace lietype {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::optional<u128> checked_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return u128{0};
  u128 r = a * b;
  if (r / b != a) return std::nullopt;
  return r;
}

std::optional<u128> checked_pow(u128 base, unsigned exp) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    auto m = checked_mul(r, base);
    if (!m) return std::nullopt;
    r = *m;
  }
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<u64> dist(1, n - 1);
  while (true) {
    u64 c = dist(rng);
    u64 x = dist(rng), y = x, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::map<u64, unsigned>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
    if (n % sp == 0) {
      while (n % sp == 0) {
        ++out[sp];
        n /= sp;
      }
      factor_into(n, out, rng);
      return;
    }
  }
  u64 d = pollard_rho(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace

std::map<u64, unsigned> factor_integer(u64 n) {
  std::map<u64, unsigned> out;
  std::mt19937_64 rng(0x5eed);
  factor_into(n, out, rng);
  return out;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<u128> lcm128(u128 a, u128 b) {
  if (a == 0 || b == 0) return u128{0};
  return checked_mul(a / gcd128(a, b), b);
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

}  // namespace lietype
