#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lietype {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string to_string(u128 v);

// Checked arithmetic; nullopt on overflow.
std::optional<u128> checked_mul(u128 a, u128 b);
std::optional<u128> checked_pow(u128 base, unsigned exp);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
bool is_prime(u64 n);

// Prime factorization (Miller-Rabin + Pollard rho).
std::map<u64, unsigned> factor_integer(u64 n);

u128 gcd128(u128 a, u128 b);
std::optional<u128> lcm128(u128 a, u128 b);

std::vector<unsigned> divisors(unsigned n);

}  // namespace lietype
