#include "reflgen/gen.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "reflgen/error.hpp"

namespace reflgen {

namespace {

IntVector canonical_sign(IntVector v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

// Labels one irreducible reflection-closed component.
GroupType classify_component(const LineTable& t, const std::vector<std::size_t>& comp) {
  IntegerSpan span(t.dim());
  for (auto i : comp) span.add(t.line(i));
  const int r = static_cast<int>(span.rank());
  const std::size_t roots = 2 * comp.size();
  std::int64_t lo = t.norm(comp.front()), hi = lo;
  for (auto i : comp) {
    lo = std::min(lo, t.norm(i));
    hi = std::max(hi, t.norm(i));
  }
  std::size_t n_long = 0;
  for (auto i : comp) n_long += (t.norm(i) == hi) ? 2 : 0;
  const std::size_t n_short = roots - n_long;
  const auto R = static_cast<std::size_t>(r);

  if (lo == hi) {
    if (roots == R * (R + 1)) {
      if (r == 3) {
        // A_3 = D_3; call it D_3 when it uses both h_i + h_j and h_i - h_j on
        // one coordinate pair, which is how it sits inside B/C/D models.
        std::map<std::pair<std::size_t, std::size_t>, int> kinds;
        for (auto i : comp) {
          const auto& v = t.line(i);
          std::vector<std::size_t> nz;
          for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0) nz.push_back(c);
          if (nz.size() == 2) kinds[{nz[0], nz[1]}] |= (v[nz[0]] == v[nz[1]]) ? 1 : 2;
        }
        for (const auto& [key, mask] : kinds)
          if (mask == 3) return {Series::D, 3};
      }
      return {Series::A, r};
    }
    if (r >= 4 && roots == 2 * R * (R - 1)) return {Series::D, r};
    if (r == 6 && roots == 72) return {Series::E, 6};
    if (r == 7 && roots == 126) return {Series::E, 7};
    if (r == 8 && roots == 240) return {Series::E, 8};
  } else {
    if (r == 2 && roots == 12 && hi == 3 * lo) return {Series::G, 2};
    if (r == 4 && roots == 48 && n_long == 24) return {Series::F, 4};
    if (hi == 2 * lo && roots == 2 * R * R) {
      if (n_short == 2 * R && (r > 2 || t.system().type.series != Series::C)) return {Series::B, r};
      if (n_long == 2 * R) return {Series::C, r};
    }
  }
  throw UnknownType("rank " + std::to_string(r) + " with " + std::to_string(roots) + " roots");
}

}  // namespace

LineTable::LineTable(RootSystem rs) : rs_(std::move(rs)) {
  for (const auto& r : rs_.roots) {
    IntVector c = canonical_sign(r.coords);
    if (c == r.coords) lines_.push_back(c);
  }
  std::sort(lines_.begin(), lines_.end());
  const std::size_t n = lines_.size();
  if (n > kMaxLines) throw UnsupportedType(rs_.type.name() + " has more than 256 root lines");
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[lines_[i]] = i;
  dots_.resize(n * n);
  codes_.resize(n * n);
  refl_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dots_[i * n + j] = reflgen::dot(lines_[i], lines_[j]);
  for (std::size_t i = 0; i < n; ++i) longest_ = std::max(longest_, norm(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      codes_[i * n + j] = i == j ? 4 : angle_class(lines_[i], lines_[j]).code();
      const std::int64_t c = 2 * dot(i, j) / norm(j);
      IntVector w = lines_[i];
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * lines_[j][k];
      refl_[i * n + j] = static_cast<std::uint16_t>(index.at(canonical_sign(std::move(w))));
    }
  }
}

std::optional<std::size_t> LineTable::index_of(std::span<const std::int64_t> v) const {
  IntVector c = canonical_sign(IntVector(v.begin(), v.end()));
  auto it = std::lower_bound(lines_.begin(), lines_.end(), c);
  if (it == lines_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - lines_.begin());
}

LineSet LineTable::all() const {
  LineSet s;
  for (std::size_t i = 0; i < size(); ++i) s.set(i);
  return s;
}

RootSet RootSet::of(const LineTable& t, std::span<const std::size_t> lines) {
  RootSet s{&t, {}};
  for (auto i : lines) s.members.set(i);
  return s;
}

std::vector<std::size_t> RootSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = members._Find_first(); i < kMaxLines; i = members._Find_next(i)) out.push_back(i);
  return out;
}

LineSet closure_of(const LineTable& t, std::span<const std::size_t> lines) {
  LineSet in;
  std::vector<std::uint16_t> list;
  list.reserve(t.size());
  for (auto i : lines) {
    if (!in.test(i)) {
      in.set(i);
      list.push_back(static_cast<std::uint16_t>(i));
    }
  }
  for (std::size_t head = 0; head < list.size(); ++head) {
    const std::size_t a = list[head];
    for (std::size_t k = 0; k <= head; ++k) {
      const std::size_t b = list[k];
      const std::uint16_t x = t.reflect(a, b);
      if (!in.test(x)) {
        in.set(x);
        list.push_back(x);
      }
      const std::uint16_t y = t.reflect(b, a);
      if (!in.test(y)) {
        in.set(y);
        list.push_back(y);
      }
    }
  }
  return in;
}

RootSet subsystem_closure(const RootSet& s) {
  const auto idx = s.indices();
  return {s.table, closure_of(*s.table, idx)};
}

bool generates_full(const LineTable& t, std::span<const std::size_t> lines) {
  return closure_of(t, lines).count() == t.size();
}

bool generates_full(const RootSet& s) {
  const auto idx = s.indices();
  return generates_full(*s.table, idx);
}

std::vector<GroupType> subsystem_type(const RootSet& s) {
  const LineTable& t = *s.table;
  std::vector<std::size_t> members = s.indices();
  std::vector<int> comp(members.size(), -1);
  std::vector<GroupType> out;
  for (std::size_t start = 0; start < members.size(); ++start) {
    if (comp[start] >= 0) continue;
    std::vector<std::size_t> queue{start};
    comp[start] = static_cast<int>(start);
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t o = 0; o < members.size(); ++o)
        if (comp[o] < 0 && t.dot(members[queue[h]], members[o]) != 0) {
          comp[o] = static_cast<int>(start);
          queue.push_back(o);
        }
    std::vector<std::size_t> lines;
    for (auto q : queue) lines.push_back(members[q]);
    out.push_back(classify_component(t, lines));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reflgen

namespace reflgen {

LineBasis::LineBasis(const LineTable& t, std::span<const std::size_t> basis)
    : t_(&t), basis_(basis.begin(), basis.end()) {
  const std::size_t n = basis_.size();
  IntegerSpan rows(n);
  for (std::size_t c = 0; c < t.dim() && coords_.size() < n; ++c) {
    IntVector row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = t.line(basis_[i])[c];
    if (rows.add(row)) coords_.push_back(c);
  }
  if (coords_.size() != n) throw RankDeficient("basis lines are dependent");
  RationalMatrix m(n, n), aug(n, 2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      m(a, i) = static_cast<long>(t.line(basis_[i])[coords_[a]]);
      aug(a, i) = m(a, i);
    }
    aug(a, n + a) = 1;
  }
  const Rational det = determinant(m);
  if (!det.get_num().fits_slong_p()) throw ArithmeticOverflow("basis determinant");
  det_ = det.get_num().get_si();
  const RationalMatrix red = aug.rref();
  adj_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      const Rational v = red(i, n + a) * det;
      if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw ArithmeticOverflow("adjugate entry");
      adj_[i * n + a] = v.get_num().get_si();
    }
}

bool LineBasis::coefficients(std::span<const std::int64_t> v, std::vector<std::int64_t>& c) const {
  const std::size_t n = basis_.size();
  c.assign(n, 0);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (std::size_t a = 0; a < n; ++a) s += adj_[i * n + a] * v[coords_[a]];
    c[i] = s;
    if (s == 0) ok = false;
  }
  return ok;
}

namespace {

class EquivalenceSearch {
 public:
  EquivalenceSearch(const LineTable& t, std::span<const std::size_t> a, std::span<const std::size_t> b)
      : t_(t), target_(b.begin(), b.end()), k_(a.size()) {
    IntegerSpan span(t.dim());
    for (auto l : a) {
      if (!span.add(t.line(l))) throw RankDeficient("line set is dependent");
      source_.push_back(l);
    }
    for (std::size_t l = 0; l < t.size() && span.rank() < t.rank(); ++l)
      if (span.add(t.line(l))) source_.push_back(l);
    basis_ = std::make_unique<LineBasis>(t, source_);
    coeffs_.resize(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) basis_->coefficients(t.line(r), coeffs_[r]);
  }

  bool run() { return target_.size() == k_ && search(0); }

 private:
  bool search(std::size_t pos) {
    if (pos == source_.size()) return verify();
    const std::size_t src = source_[pos];
    auto try_line = [&](std::size_t l) {
      if (used_.test(l) || t_.norm(l) != t_.norm(src)) return false;
      for (int sign : {1, -1}) {
        if (pos == 0 && sign < 0) break;
        bool ok = true;
        for (std::size_t q = 0; q < pos && ok; ++q)
          ok = sign * signs_[q] * t_.dot(images_[q], l) == t_.dot(source_[q], src);
        if (!ok) continue;
        images_.push_back(l);
        signs_.push_back(sign);
        used_.set(l);
        if (search(pos + 1)) return true;
        used_.reset(l);
        images_.pop_back();
        signs_.pop_back();
      }
      return false;
    };
    if (pos < k_) {
      for (auto l : target_)
        if (try_line(l)) return true;
    } else {
      for (std::size_t l = 0; l < t_.size(); ++l)
        if (try_line(l)) return true;
    }
    return false;
  }

  bool verify() const {
    const std::int64_t det = basis_->det();
    IntVector v(t_.dim());
    for (std::size_t r = 0; r < t_.size(); ++r) {
      std::fill(v.begin(), v.end(), 0);
      for (std::size_t i = 0; i < images_.size(); ++i) {
        const std::int64_t c = coeffs_[r][i] * signs_[i];
        const IntVector& img = t_.line(images_[i]);
        for (std::size_t d = 0; d < v.size(); ++d) v[d] += c * img[d];
      }
      for (auto& x : v) {
        if (x % det != 0) return false;
        x /= det;
      }
      if (!t_.index_of(v)) return false;
    }
    return true;
  }

  const LineTable& t_;
  std::vector<std::size_t> target_;
  std::size_t k_;
  std::vector<std::size_t> source_;
  std::unique_ptr<LineBasis> basis_;
  std::vector<std::vector<std::int64_t>> coeffs_;
  std::vector<std::size_t> images_;
  std::vector<int> signs_;
  LineSet used_;
};

}  // namespace

bool lines_equivalent(const LineTable& t, std::span<const std::size_t> a, std::span<const std::size_t> b) {
  return EquivalenceSearch(t, a, b).run();
}

}  // namespace reflgen
