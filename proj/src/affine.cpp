#include "osc/affine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace osc {

namespace {

BigInt pow2(unsigned e) {
  BigInt v = 1;
  return v << e;
}

}  // namespace

Dyadic::Dyadic(BigInt n, unsigned k) : num(std::move(n)), den_exp(k) {
  if (num == 0) {
    den_exp = 0;
    return;
  }
  while (den_exp > 0 && num % 2 == 0) {
    num >>= 1;
    --den_exp;
  }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  unsigned k = std::max(den_exp, o.den_exp);
  BigInt n = num * pow2(k - den_exp) + o.num * pow2(k - o.den_exp);
  return Dyadic(std::move(n), k);
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.num = -out.num;
  return out;
}

Dyadic Dyadic::scaled_pow2(long long e) const {
  if (num == 0) return Dyadic();
  if (e >= 0) return Dyadic(num << static_cast<unsigned>(e), den_exp);
  return Dyadic(num, den_exp + static_cast<unsigned>(-e));
}

std::string Dyadic::str() const {
  std::string out = num.str();
  if (den_exp > 0) out += "/2^" + std::to_string(den_exp);
  return out;
}

Dyadic Dyadic::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Dyadic(BigInt(std::string(text)), 0);
  }
  BigInt num{std::string(text.substr(0, slash))};
  std::string_view den = text.substr(slash + 1);
  if (den.rfind("2^", 0) == 0) {
    unsigned long k = std::stoul(std::string(den.substr(2)));
    return Dyadic(std::move(num), static_cast<unsigned>(k));
  }
  // plain denominator, must be a power of two
  BigInt d{std::string(den)};
  if (d <= 0) throw std::invalid_argument("dyadic denominator must be positive");
  unsigned k = 0;
  while (d % 2 == 0) {
    d >>= 1;
    ++k;
  }
  if (d != 1) throw std::invalid_argument("dyadic denominator must be a power of two");
  return Dyadic(std::move(num), k);
}

Dyadic AffMap::apply(const Dyadic& x) const {
  return x.scaled_pow2(log_scale) + shift;
}

std::string AffMap::str() const {
  return "a=" + std::to_string(log_scale) + ",t=" + shift.str();
}

AffMap AffMap::parse(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("map literal needs 'a=..,t=..'");
  std::string_view a_part = text.substr(0, comma);
  std::string_view t_part = text.substr(comma + 1);
  auto strip = [](std::string_view s, std::string_view prefix) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    if (s.rfind(prefix, 0) != 0) throw std::invalid_argument("bad map literal field");
    return s.substr(prefix.size());
  };
  AffMap out;
  out.log_scale = std::stoll(std::string(strip(a_part, "a=")));
  out.shift = Dyadic::parse(strip(t_part, "t="));
  return out;
}

AffMap compose(const AffMap& f, const AffMap& g) {
  AffMap out;
  out.log_scale = f.log_scale + g.log_scale;
  out.shift = g.shift.scaled_pow2(f.log_scale) + f.shift;
  return out;
}

AffMap invert_map(const AffMap& f) {
  AffMap out;
  out.log_scale = -f.log_scale;
  out.shift = (-f.shift).scaled_pow2(-f.log_scale);
  return out;
}

AffMap word_to_map(const Word& w) {
  AffMap acc = AffMap::identity();
  for (const Letter& l : w.letters()) {
    AffMap m = l.gen == 0 ? AffMap::gen_a() : AffMap::gen_b();
    if (l.sign < 0) m = invert_map(m);
    acc = compose(acc, m);
  }
  return acc;
}

bool semigroup_member(const AffMap& f) {
  return f.log_scale >= 0 && f.shift.is_integer() && f.shift.num >= 0;
}

bool product_set_member(const AffMap& f, ProductSide side) {
  if (side == ProductSide::SinvS) return true;
  unsigned slack = f.log_scale < 0 ? static_cast<unsigned>(-f.log_scale) : 0;
  return f.shift.den_exp <= slack;
}

namespace {

BigInt ceil_dyadic(const Dyadic& t) {
  if (t.den_exp == 0) return t.num;
  BigInt d = pow2(t.den_exp);
  return t.num > 0 ? BigInt((t.num + d - 1) / d) : BigInt(t.num / d);
}

}  // namespace

std::optional<std::pair<AffMap, AffMap>> product_set_witness(const AffMap& f, ProductSide side) {
  if (!product_set_member(f, side)) return std::nullopt;
  const long long a = f.log_scale;
  const Dyadic& t = f.shift;
  AffMap s1, s2;
  if (side == ProductSide::SSinv) {
    // f = s1 o s2^-1 with s1 = (a + A2, t + 2^a T2), s2 = (A2, T2).
    if (a >= 0) {
      BigInt t2 = t.num < 0 ? -t.num : BigInt(0);  // t is an integer here
      s2 = AffMap{0, Dyadic::from_int(t2)};
    } else {
      BigInt t1 = std::max(BigInt(0), ceil_dyadic(t));
      BigInt t2 = (Dyadic::from_int(t1) - t).scaled_pow2(-a).num;  // integer, >= 0
      s2 = AffMap{-a, Dyadic::from_int(t2)};
    }
    s1 = compose(f, s2);
  } else {
    // f = s1^-1 o s2 with s1 = (A1, T1), s2 = (a + A1, T2), T2 - T1 = t * 2^A1.
    long long a1 = std::max<long long>(0, -a);
    a1 = std::max<long long>(a1, t.den_exp);
    BigInt d = t.scaled_pow2(a1).num;
    BigInt t1 = d < 0 ? -d : BigInt(0);
    s1 = AffMap{a1, Dyadic::from_int(t1)};
    s2 = AffMap{a + a1, Dyadic::from_int(d + t1)};
  }
  if (!semigroup_member(s1) || !semigroup_member(s2)) {
    throw std::logic_error("product set witness left the semigroup");
  }
  AffMap realized = side == ProductSide::SSinv ? compose(s1, invert_map(s2))
                                               : compose(invert_map(s1), s2);
  if (!(realized == f)) throw std::logic_error("product set witness does not compose to the map");
  return std::make_pair(s1, s2);
}

std::optional<Word> semigroup_witness_word(const AffMap& f) {
  if (!semigroup_member(f)) return std::nullopt;
  // b^shift a^log_scale: every b contributes 2^0 = 1 before any a acts.
  std::vector<Letter> letters;
  BigInt t = f.shift.num;
  if (t > (1 << 20)) return std::nullopt;  // witness would be absurdly long
  for (BigInt i = 0; i < t; ++i) letters.push_back(Letter{1, 1});
  for (long long i = 0; i < f.log_scale; ++i) letters.push_back(Letter{0, 1});
  return Word::from_reduced(std::move(letters));
}

std::vector<AffMap> AffBackend::enumerate_base(const BaseSpec& spec, int per_factor) const {
  // Walk positive words breadth-first, deduplicating collapsed maps.
  std::map<std::pair<long long, std::pair<unsigned, BigInt>>, AffMap> seen;
  auto keyof = [](const AffMap& m) {
    return std::make_pair(m.log_scale, std::make_pair(m.shift.den_exp, m.shift.num));
  };
  std::vector<AffMap> frontier{AffMap::identity()};
  seen.emplace(keyof(frontier[0]), frontier[0]);
  for (int len = 1; len <= per_factor; ++len) {
    std::vector<AffMap> next;
    for (const AffMap& m : frontier) {
      for (const AffMap& g : {AffMap::gen_a(), AffMap::gen_b()}) {
        AffMap v = compose(m, g);
        if (seen.emplace(keyof(v), v).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  std::vector<AffMap> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(v);
  if (spec.inverted) {
    for (AffMap& m : out) m = invert_map(m);
  }
  return out;
}

std::optional<bool> AffBackend::exact_osc_member(const BaseSpec& spec, OscillatorExpr expr,
                                                 const AffMap& f) const {
  OscillatorExpr eff = spec.inverted ? expr.flipped() : expr;
  if (eff.n >= 3) return true;
  if (eff.n == 2) {
    return product_set_member(f, eff.mirror ? ProductSide::SinvS : ProductSide::SSinv);
  }
  return semigroup_member(eff.mirror ? invert_map(f) : f);
}

}  // namespace osc
