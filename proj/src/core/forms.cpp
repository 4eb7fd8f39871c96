#include "core/forms.hpp"

#include <algorithm>
#include <numeric>

#include "core/arith.hpp"
#include "core/errors.hpp"

namespace idoneal::forms {

Discriminant::Discriminant(Int d) : d_(d) {
  if (d >= 0) throw DomainError("discriminant must be negative, got " + to_string(d));
  const Int r = mod_floor(d, 4);
  if (r != 0 && r != 1) throw DomainError("discriminant must be 0 or 1 mod 4, got " + to_string(d));
}

Int discriminant(const QuadForm& f) { return f.b * f.b - 4 * f.a * f.c; }

bool is_positive_definite(const QuadForm& f) {
  return f.a > 0 && f.c > 0 && discriminant(f) < 0;
}

bool is_reduced(const QuadForm& f) {
  const Int abs_b = abs(f.b);
  if (!(abs_b <= f.a && f.a <= f.c)) return false;
  if ((abs_b == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

QuadForm reduce(QuadForm f) {
  if (!is_positive_definite(f)) throw DomainError("reduce: form is not positive definite");
  for (;;) {
    // Normalize b into (-a, a].
    if (!(-f.a < f.b && f.b <= f.a)) {
      const Int two_a = 2 * f.a;
      const Int t = div_floor(f.a - f.b, two_a);
      // (a, b, c) -> (a, b + 2at, a t^2 + b t + c)
      f.c = f.a * t * t + f.b * t + f.c;
      f.b = f.b + two_a * t;
    }
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

std::vector<QuadForm> enumerate_reduced(Discriminant d) {
  const Int n = d.magnitude();
  if (n > kEnumerationLimit) {
    throw TooLargeError("|d| = " + to_string(n) + " is too large for enumeration");
  }
  const auto abs_d = static_cast<std::uint64_t>(n);
  const bool odd = (abs_d & 1) != 0;
  std::vector<QuadForm> out;
  for (std::uint64_t a = 1; 3 * a * a <= abs_d; ++a) {
    const std::uint64_t four_a = 4 * a;
    // b runs over the parity class of d; handle |b| once and emit both signs.
    for (std::uint64_t b = odd ? 1 : 0; b <= a; b += 2) {
      const std::uint64_t num = b * b + abs_d;
      if (num % four_a != 0) continue;
      const std::uint64_t c = num / four_a;
      if (c < a) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({static_cast<Int>(a), static_cast<Int>(b), static_cast<Int>(c)});
      if (b != 0 && b != a && c != a) {
        out.push_back({static_cast<Int>(a), -static_cast<Int>(b), static_cast<Int>(c)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
    return x.a != y.a ? x.a < y.a : (x.b != y.b ? x.b > y.b : x.c < y.c);
  });
  return out;
}

std::uint64_t class_number(Discriminant d) { return enumerate_reduced(d).size(); }

bool is_ambiguous(const QuadForm& f) {
  if (!is_reduced(f)) throw DomainError("is_ambiguous: form is not reduced");
  return f.b == 0 || f.b == f.a || f.a == f.c;
}

bool is_fundamental(Discriminant d) {
  const Int v = d.value();
  if (mod_floor(v, 4) == 1) {
    return arith::is_squarefree(static_cast<std::uint64_t>(-v));
  }
  const Int m = v / 4;
  const Int r = mod_floor(m, 4);
  if (r != 2 && r != 3) return false;
  return arith::is_squarefree(static_cast<std::uint64_t>(-m));
}

std::uint64_t genus_count(Discriminant d) {
  if (!is_fundamental(d)) {
    throw DomainError("genus_count is only implemented for fundamental discriminants; " +
                      to_string(d.value()) + " is not fundamental");
  }
  const unsigned w = arith::omega(static_cast<std::uint64_t>(d.magnitude()));
  return std::uint64_t{1} << (w - 1);
}

bool one_class_per_genus(Discriminant d) {
  for (const QuadForm& f : enumerate_reduced(d)) {
    if (!is_ambiguous(f)) return false;
  }
  return true;
}

GenusReport genus_report(Discriminant d) {
  auto forms = enumerate_reduced(d);
  std::uint64_t ambiguous = 0;
  for (const auto& f : forms) ambiguous += is_ambiguous(f) ? 1 : 0;
  const bool fundamental = is_fundamental(d);
  GenusReport report{
      .d = d,
      .class_number = forms.size(),
      .genus_count = fundamental ? std::optional<std::uint64_t>(genus_count(d)) : std::nullopt,
      .forms = std::move(forms),
      .ambiguous_count = ambiguous,
      .one_class_per_genus = false,
      .is_fundamental = fundamental,
  };
  report.one_class_per_genus = report.ambiguous_count == report.class_number;
  return report;
}

std::vector<CensusEntry> census_table(std::uint64_t max_abs_d, bool primitive_only) {
  std::vector<CensusEntry> table(max_abs_d + 1);
  for (std::uint64_t a = 1; 3 * a * a <= max_abs_d; ++a) {
    for (std::uint64_t b = 0; b <= a; ++b) {
      // c starts at a; |d| = 4ac - b^2 grows by 4a per step.
      std::uint64_t abs_d = 4 * a * a - b * b;
      for (std::uint64_t c = a; abs_d <= max_abs_d; ++c, abs_d += 4 * a) {
        if (primitive_only && std::gcd(std::gcd(a, b), c) != 1) continue;
        const bool ambiguous = b == 0 || b == a || c == a;
        // (a, -b, c) is a distinct reduced form unless the boundary rule applies.
        const std::uint32_t copies = ambiguous ? 1 : 2;
        table[abs_d].class_number += copies;
        if (ambiguous) table[abs_d].ambiguous_count += 1;
      }
    }
  }
  return table;
}

}  // namespace idoneal::forms
