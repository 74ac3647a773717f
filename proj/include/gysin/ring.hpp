#pragma once

#include <string>

#include "gysin/error.hpp"
#include "gysin/numeric.hpp"

namespace gysin {

enum class RingKind { Integers, Rationals, PrimeField };

/// Coefficient ring: Z, Q, or Z/p with p prime. Matrix entries are stored
/// as integers for every ring; the ring decides how they are interpreted
/// (mod p for prime fields, as rationals with denominator 1 for Q).
struct Ring {
  RingKind kind = RingKind::Integers;
  Int p = 0;  // modulus, prime fields only

  static Ring Z() { return Ring{RingKind::Integers, 0}; }
  static Ring Q() { return Ring{RingKind::Rationals, 0}; }
  static Ring Zp(Int prime) {
    if (!is_prime(prime))
      throw BadParams("Zp modulus must be prime, got " + to_string(prime));
    return Ring{RingKind::PrimeField, prime};
  }

  bool is_field() const { return kind != RingKind::Integers; }
  bool is_modular() const { return kind == RingKind::PrimeField; }

  bool operator==(const Ring& o) const {
    return kind == o.kind && (kind != RingKind::PrimeField || p == o.p);
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  std::string name() const {
    switch (kind) {
      case RingKind::Integers: return "Z";
      case RingKind::Rationals: return "Q";
      case RingKind::PrimeField: return "Z/" + to_string(p);
    }
    return "?";
  }

  /// Canonical representative of a scalar: a mod p in [0,p) for prime
  /// fields, a itself otherwise.
  Int reduce(const Int& a) const {
    if (is_modular()) return mod_floor(a, p);
    return a;
  }

  bool is_zero(const Int& a) const {
    if (is_modular()) return divides(p, a);
    return a == 0;
  }
};

inline void require_same_ring(const Ring& a, const Ring& b,
                              const char* where) {
  if (a != b)
    throw RingMismatch(std::string(where) + ": rings differ (" + a.name() +
                       " vs " + b.name() + ")");
}

}  // namespace gysin
