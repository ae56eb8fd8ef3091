#include "nilpet/bch.hpp"

#include <map>

namespace nilpet {

namespace {

using Word = std::vector<int>;
using FreePoly = std::map<Word, Rational>;

FreePoly truncated_product(const FreePoly& a, const FreePoly& b, int order) {
  FreePoly out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > order) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// exp(X) exp(Y) - 1 = sum over a + b >= 1 of X^a Y^b / (a! b!)
FreePoly exp_product_minus_one(int order) {
  FreePoly out;
  Rational fa = 1;
  for (int a = 0; a <= order; ++a) {
    if (a > 0) fa *= a;
    Rational fb = 1;
    for (int b = 0; a + b <= order; ++b) {
      if (b > 0) fb *= b;
      if (a + b == 0) continue;
      Word w(static_cast<std::size_t>(a), 0);
      w.insert(w.end(), static_cast<std::size_t>(b), 1);
      out[w] = Rational(1) / (fa * fb);
    }
  }
  return out;
}

}  // namespace

std::size_t BchTable::slot(const std::vector<int>& word) {
  std::size_t bits = 0;
  for (int letter : word) bits = (bits << 1) | static_cast<std::size_t>(letter);
  return ((std::size_t{1} << word.size()) - 2) + bits;
}

BchTable::BchTable(int max_order) : max_order_(max_order) {
  if (max_order < 1 || max_order > 12) throw std::invalid_argument("BCH order must be in [1, 12]");
  const std::size_t slots = (std::size_t{1} << (max_order + 1)) - 2;
  coef_.assign(slots, Rational(0));
  needed_.assign(slots, false);

  // log(1 + A) = sum_m (-1)^(m+1) A^m / m
  const FreePoly a = exp_product_minus_one(max_order);
  FreePoly z;
  FreePoly power = a;
  for (int m = 1; m <= max_order && !power.empty(); ++m) {
    Rational scale = Rational(m % 2 == 1 ? 1 : -1) / m;
    for (const auto& [w, c] : power) z[w] += scale * c;
    power = truncated_product(power, a, max_order);
  }

  // Dynkin-Specht-Wever: a homogeneous Lie element P of degree n equals
  // (1/n) sum_w p_w [[..[w1, w2], ..], wn].
  for (const auto& [w, c] : z) {
    if (c == 0) continue;
    coef_[slot(w)] = c / static_cast<int>(w.size());
  }
  for (int len = max_order; len >= 1; --len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      Word w(static_cast<std::size_t>(len));
      for (int p = 0; p < len; ++p) w[static_cast<std::size_t>(p)] = static_cast<int>((bits >> (len - 1 - p)) & 1);
      bool need = coef_[slot(w)] != 0;
      if (len < max_order) {
        Word w0 = w, w1 = w;
        w0.push_back(0);
        w1.push_back(1);
        need = need || needed_[slot(w0)] || needed_[slot(w1)];
      }
      needed_[slot(w)] = need;
    }
  }
}

const Rational& BchTable::coefficient(const std::vector<int>& word) const {
  return coef_[slot(word)];
}

bool BchTable::prefix_needed(const std::vector<int>& prefix) const {
  if (prefix.empty()) return true;
  if (static_cast<int>(prefix.size()) > max_order_) return false;
  return needed_[slot(prefix)];
}

const BchTable& default_bch_table() {
  static const BchTable table(6);
  return table;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  if (!same_algebra(x.algebra(), y.algebra())) throw AlgebraMismatch();
  return LieElement(x.algebra(), bracket(*x.algebra(), x.coords(), y.coords()));
}

GroupElement bch_product(const GroupElement& x, const GroupElement& y, const BchTable& table) {
  if (!same_algebra(x.algebra(), y.algebra())) throw AlgebraMismatch();
  return GroupElement(x.algebra(), bch(*x.algebra(), x.coords(), y.coords(), table));
}

GroupElement group_inverse(const GroupElement& x) {
  return GroupElement(x.algebra(), RationalVector(-x.coords()));
}

GroupElement conjugate(const GroupElement& g, const GroupElement& h, const BchTable& table) {
  return bch_product(bch_product(g, h, table), group_inverse(g), table);
}

}  // namespace nilpet
