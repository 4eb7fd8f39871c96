#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/integer.hpp"

namespace idoneal::forms {

/// The binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
  Int a = 0;
  Int b = 0;
  Int c = 0;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

/// A negative integer congruent to 0 or 1 mod 4.
class Discriminant {
 public:
  /// Throws DomainError unless d < 0 and d = 0, 1 (mod 4).
  explicit Discriminant(Int d);
  static Discriminant from_magnitude(Int abs_d) { return Discriminant(-abs_d); }

  Int value() const { return d_; }
  Int magnitude() const { return -d_; }

  friend bool operator==(const Discriminant&, const Discriminant&) = default;

 private:
  Int d_;
};

/// Largest |d| accepted by enumerate_reduced and everything built on it.
inline constexpr Int kEnumerationLimit = 10'000'000'000;

Int discriminant(const QuadForm& f);

bool is_positive_definite(const QuadForm& f);

/// |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
bool is_reduced(const QuadForm& f);

/// The reduced representative of f's proper equivalence class.
/// Throws DomainError if f is not positive definite.
QuadForm reduce(QuadForm f);

/// Reduced primitive forms of discriminant d, ordered by (a, b).
/// Throws TooLargeError when |d| > kEnumerationLimit.
std::vector<QuadForm> enumerate_reduced(Discriminant d);

std::uint64_t class_number(Discriminant d);

/// Shape test (a,0,c), (a,a,c) or (a,b,a). Throws DomainError on unreduced input.
bool is_ambiguous(const QuadForm& f);

bool is_fundamental(Discriminant d);

/// 2^(omega(|d|) - 1). Throws DomainError for non-fundamental d.
std::uint64_t genus_count(Discriminant d);

/// Every reduced form of discriminant d is ambiguous.
bool one_class_per_genus(Discriminant d);

struct GenusReport {
  Discriminant d;
  std::uint64_t class_number;
  std::optional<std::uint64_t> genus_count;  // empty when d is not fundamental
  std::vector<QuadForm> forms;
  std::uint64_t ambiguous_count;
  bool one_class_per_genus;
  bool is_fundamental;
};

GenusReport genus_report(Discriminant d);

/// Per-|d| class number and ambiguous-form count for every discriminant up to a bound.
struct CensusEntry {
  std::uint32_t class_number = 0;
  std::uint32_t ambiguous_count = 0;
};

/// Tabulates all reduced forms with 4ac - b^2 <= max_abs_d in one pass over
/// (a, b, c). Entry i describes discriminant -i; entries for i = 1, 2 (mod 4)
/// stay zero. With primitive_only = false, imprimitive forms are counted too
/// (identical results on fundamental discriminants, and much cheaper).
std::vector<CensusEntry> census_table(std::uint64_t max_abs_d, bool primitive_only = true);

}  // namespace idoneal::forms
