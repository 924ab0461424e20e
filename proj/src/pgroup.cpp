#include "gennum/pgroup.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

namespace gennum::pgroup {

namespace {

constexpr Int kMaxWords = 8;

std::uint64_t hash_words(const std::uint64_t* w, Int k) {
  std::uint64_t h = 1469598103934665603ull;
  for (Int i = 0; i < k; ++i) {
    h ^= w[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_ids(const std::vector<std::int32_t>& ids) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int32_t x : ids) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

AffineElement AffineElement::identity(Int n) {
  return {Mat::Identity(n, n), Vec::Zero(n)};
}

AffineElement AffineElement::make(const Zmod& ring, const Mat& m, const Vec& v) {
  require(m.rows() == m.cols() && m.rows() == v.size(), errc::internal,
          "affine element shape mismatch");
  AffineElement g{m, v};
  for (Int i = 0; i < m.rows(); ++i) {
    g.v(i) = ring.reduce(g.v(i));
    for (Int j = 0; j < m.cols(); ++j) g.m(i, j) = ring.reduce(g.m(i, j));
  }
  return g;
}

AffineElement AffineElement::linear(const Zmod& ring, const Mat& m) {
  return make(ring, m, Vec::Zero(m.rows()));
}

AffineElement AffineElement::translation(const Zmod& ring, const Vec& v) {
  return make(ring, Mat::Identity(v.size(), v.size()), v);
}

AffineElement compose(const Zmod& ring, const AffineElement& a, const AffineElement& b) {
  const Int n = a.m.rows();
  AffineElement r{Mat(n, n), Vec(n)};
  for (Int i = 0; i < n; ++i) {
    __int128 av = a.v(i);
    for (Int j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (Int k = 0; k < n; ++k)
        acc += static_cast<__int128>(a.m(i, k)) * b.m(k, j);
      r.m(i, j) = static_cast<Int>(((acc % ring.q) + ring.q) % ring.q);
      av += static_cast<__int128>(a.m(i, j)) * b.v(j);
    }
    r.v(i) = static_cast<Int>(((av % ring.q) + ring.q) % ring.q);
  }
  return r;
}

AffineElement inverse(const Zmod& ring, const AffineElement& a) {
  RMatrix minv = padic::rinverse(RMatrix{ring, a.m});
  Vec w = padic::rapply(minv, a.v);
  for (Int i = 0; i < w.size(); ++i) w(i) = ring.neg(w(i));
  return {minv.m, w};
}

bool affine_equal(const AffineElement& a, const AffineElement& b) {
  return a.m == b.m && a.v == b.v;
}

void FiniteGroup::pack(const AffineElement& g, std::uint64_t* w) const {
  std::fill(w, w + words_per_elem_, 0);
  Int cursor = 0;
  auto put = [&](Int x) {
    const Int word = cursor >> 6;
    const Int off = cursor & 63;
    const Int room = 64 - off;
    const std::uint64_t u = static_cast<std::uint64_t>(x);
    if (bits_ <= room) {
      w[word] |= u << (room - bits_);
    } else {
      w[word] |= u >> (bits_ - room);
      w[word + 1] |= u << (64 - (bits_ - room));
    }
    cursor += bits_;
  };
  for (Int i = 0; i < n_; ++i)
    for (Int j = 0; j < n_; ++j) put(g.m(i, j));
  for (Int i = 0; i < n_; ++i) put(g.v(i));
}

AffineElement FiniteGroup::element(std::int32_t id) const {
  require(id >= 0 && static_cast<std::size_t>(id) < count_, errc::internal,
          "element id out of range");
  const std::uint64_t* w = &storage_[static_cast<std::size_t>(id) * words_per_elem_];
  const std::uint64_t mask = (bits_ == 64) ? ~0ull : ((1ull << bits_) - 1);
  Int cursor = 0;
  auto get = [&]() -> Int {
    const Int word = cursor >> 6;
    const Int off = cursor & 63;
    const Int room = 64 - off;
    std::uint64_t u;
    if (bits_ <= room) {
      u = (w[word] >> (room - bits_)) & mask;
    } else {
      u = ((w[word] << (bits_ - room)) | (w[word + 1] >> (64 - (bits_ - room)))) & mask;
    }
    cursor += bits_;
    return static_cast<Int>(u);
  };
  AffineElement g{Mat(n_, n_), Vec(n_)};
  for (Int i = 0; i < n_; ++i)
    for (Int j = 0; j < n_; ++j) g.m(i, j) = get();
  for (Int i = 0; i < n_; ++i) g.v(i) = get();
  return g;
}

std::int32_t FiniteGroup::lookup(const std::uint64_t* words) const {
  const std::size_t mask = table_.size() - 1;
  std::size_t idx = hash_words(words, words_per_elem_) & mask;
  while (true) {
    const std::int32_t slot = table_[idx];
    if (slot < 0) return -1;
    if (std::memcmp(&storage_[static_cast<std::size_t>(slot) * words_per_elem_], words,
                    static_cast<std::size_t>(words_per_elem_) * 8) == 0)
      return slot;
    idx = (idx + 1) & mask;
  }
}

void FiniteGroup::grow_table() {
  const std::size_t ns = table_.size() * 2;
  std::vector<std::int32_t> fresh(ns, -1);
  const std::size_t mask = ns - 1;
  for (std::size_t id = 0; id < count_; ++id) {
    const std::uint64_t* w = &storage_[id * words_per_elem_];
    std::size_t idx = hash_words(w, words_per_elem_) & mask;
    while (fresh[idx] >= 0) idx = (idx + 1) & mask;
    fresh[idx] = static_cast<std::int32_t>(id);
  }
  table_ = std::move(fresh);
}

std::int32_t FiniteGroup::find_or_insert(const std::uint64_t* words, bool insert_allowed) {
  const std::size_t mask = table_.size() - 1;
  std::size_t idx = hash_words(words, words_per_elem_) & mask;
  while (true) {
    const std::int32_t slot = table_[idx];
    if (slot < 0) {
      if (!insert_allowed) return -1;
      storage_.insert(storage_.end(), words, words + words_per_elem_);
      table_[idx] = static_cast<std::int32_t>(count_);
      ++count_;
      if (count_ * 2 > table_.size()) grow_table();
      return static_cast<std::int32_t>(count_ - 1);
    }
    if (std::memcmp(&storage_[static_cast<std::size_t>(slot) * words_per_elem_], words,
                    static_cast<std::size_t>(words_per_elem_) * 8) == 0)
      return slot;
    idx = (idx + 1) & mask;
  }
}

GroupPtr FiniteGroup::closure(const Zmod& ring, Int n,
                              const std::vector<AffineElement>& gens,
                              const ClosureOptions& opts) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->ring_ = ring;
  g->n_ = n;
  g->bits_ = std::bit_width(static_cast<std::uint64_t>(ring.q - 1));
  if (g->bits_ == 0) g->bits_ = 1;
  const Int residues = n * n + n;
  require(ring.q <= (Int{1} << 31) && residues * g->bits_ <= 64 * kMaxWords,
          errc::budget_exceeded, "quotient too large for packed element storage");
  g->words_per_elem_ = (residues * g->bits_ + 63) / 64;
  g->table_.assign(std::size_t{1} << 12, -1);

  std::array<std::uint64_t, kMaxWords> buf{};
  std::vector<AffineElement> reduced;
  for (const AffineElement& raw : gens) {
    AffineElement e = AffineElement::make(ring, raw.m, raw.v);
    require(padic::is_invertible(RMatrix{ring, e.m}), errc::not_invertible,
            "generator with singular linear part");
    reduced.push_back(std::move(e));
  }

  g->pack(AffineElement::identity(n), buf.data());
  g->find_or_insert(buf.data(), true);
  for (const AffineElement& e : reduced) {
    g->pack(e, buf.data());
    const std::int32_t id = g->find_or_insert(buf.data(), true);
    if (std::find(g->gen_ids_.begin(), g->gen_ids_.end(), id) == g->gen_ids_.end())
      g->gen_ids_.push_back(id);
  }

  for (std::size_t i = 0; i < g->count_; ++i) {
    const AffineElement a = g->element(static_cast<std::int32_t>(i));
    for (const AffineElement& e : reduced) {
      const AffineElement c = compose(ring, a, e);
      g->pack(c, buf.data());
      require(static_cast<Int>(g->count_) < opts.budget || g->lookup(buf.data()) >= 0,
              errc::budget_exceeded,
              "closure exceeded the element budget " + std::to_string(opts.budget));
      g->find_or_insert(buf.data(), true);
    }
  }

  Int e = 0;
  std::size_t o = g->count_;
  while (o % static_cast<std::size_t>(ring.p) == 0) {
    o /= static_cast<std::size_t>(ring.p);
    ++e;
  }
  require(o == 1, errc::not_a_p_group,
          "closure order " + std::to_string(g->count_) + " is not a power of " +
              std::to_string(ring.p));
  g->order_exp_ = e;
  return g;
}

std::int32_t FiniteGroup::compose_ids(std::int32_t a, std::int32_t b) const {
  const AffineElement c = compose(ring_, element(a), element(b));
  std::array<std::uint64_t, kMaxWords> buf{};
  pack(c, buf.data());
  const std::int32_t id = lookup(buf.data());
  require(id >= 0, errc::internal, "product escaped the closed element set");
  return id;
}

std::int32_t FiniteGroup::inverse_id(std::int32_t a) const {
  const AffineElement c = inverse(ring_, element(a));
  std::array<std::uint64_t, kMaxWords> buf{};
  pack(c, buf.data());
  const std::int32_t id = lookup(buf.data());
  require(id >= 0, errc::internal, "inverse escaped the closed element set");
  return id;
}

std::int32_t FiniteGroup::pow_id(std::int32_t a, Int e) const {
  if (e < 0) {
    a = inverse_id(a);
    e = -e;
  }
  std::int32_t r = identity_id();
  std::int32_t base = a;
  while (e > 0) {
    if (e & 1) r = compose_ids(r, base);
    base = compose_ids(base, base);
    e >>= 1;
  }
  return r;
}

std::int32_t FiniteGroup::id_of(const AffineElement& g) const {
  const AffineElement e = AffineElement::make(ring_, g.m, g.v);
  std::array<std::uint64_t, kMaxWords> buf{};
  pack(e, buf.data());
  return lookup(buf.data());
}

Int Subgroup::order_exp() const {
  Int e = 0;
  std::size_t o = ids.size();
  const std::size_t p = static_cast<std::size_t>(parent->prime());
  while (o % p == 0) {
    o /= p;
    ++e;
  }
  require(o == 1, errc::internal, "subgroup order is not a power of p");
  return e;
}

bool Subgroup::contains(std::int32_t id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

Subgroup whole_group(const GroupPtr& g) {
  Subgroup s;
  s.parent = g;
  s.ids.resize(static_cast<std::size_t>(g->order()));
  for (std::size_t i = 0; i < s.ids.size(); ++i) s.ids[i] = static_cast<std::int32_t>(i);
  s.gens = g->generator_ids();
  s.index_exp = 0;
  return s;
}

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<std::int32_t>& gens) {
  std::vector<std::uint8_t> in(static_cast<std::size_t>(g->order()), 0);
  std::vector<std::int32_t> elems;
  elems.push_back(g->identity_id());
  in[static_cast<std::size_t>(g->identity_id())] = 1;
  for (std::int32_t x : gens)
    if (!in[static_cast<std::size_t>(x)]) {
      in[static_cast<std::size_t>(x)] = 1;
      elems.push_back(x);
    }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::int32_t x : gens) {
      const std::int32_t y = g->compose_ids(elems[i], x);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        elems.push_back(y);
      }
    }
  Subgroup s;
  s.parent = g;
  s.ids = std::move(elems);
  std::sort(s.ids.begin(), s.ids.end());
  s.gens = gens;
  s.index_exp = g->order_exp() - s.order_exp();
  return s;
}

Subgroup frattini(const Subgroup& s) {
  const GroupPtr& g = s.parent;
  const Int p = g->prime();
  std::vector<std::int32_t> words;
  std::unordered_set<std::int32_t> word_set;
  auto add_word = [&](std::int32_t w) {
    if (w != g->identity_id() && word_set.insert(w).second) words.push_back(w);
  };
  for (std::int32_t a : s.gens) add_word(g->pow_id(a, p));
  for (std::int32_t a : s.gens)
    for (std::int32_t b : s.gens) {
      if (a == b) continue;
      const std::int32_t c =
          g->compose_ids(g->compose_ids(g->inverse_id(a), g->inverse_id(b)),
                         g->compose_ids(a, b));
      add_word(c);
    }
  Subgroup n = subgroup_closure(g, words);
  // normal closure in s: conjugate by the generators until stable
  bool stable = false;
  while (!stable) {
    stable = true;
    for (std::int32_t a : s.gens) {
      const std::int32_t ai = g->inverse_id(a);
      for (std::int32_t x : n.ids) {
        const std::int32_t c = g->compose_ids(g->compose_ids(ai, x), a);
        if (!n.contains(c)) {
          add_word(c);
          stable = false;
        }
      }
    }
    if (!stable) n = subgroup_closure(g, words);
  }
  n.index_exp = g->order_exp() - n.order_exp();
  return n;
}

Int dmin(const Subgroup& s, const Subgroup* phi_hint) {
  if (phi_hint) return s.order_exp() - phi_hint->order_exp();
  const Subgroup phi = frattini(s);
  return s.order_exp() - phi.order_exp();
}

std::vector<std::int32_t> witness_generators(const Subgroup& s, const Subgroup& phi) {
  const GroupPtr& g = s.parent;
  const Int d = s.order_exp() - phi.order_exp();
  std::vector<std::int32_t> picks;
  if (d == 0) return picks;
  std::vector<std::int32_t> span_gens = phi.gens;
  Subgroup t = phi;
  for (std::int32_t a : s.gens) {
    if (static_cast<Int>(picks.size()) == d) break;
    if (t.contains(a)) continue;
    picks.push_back(a);
    span_gens.push_back(a);
    t = subgroup_closure(g, span_gens);
  }
  require(static_cast<Int>(picks.size()) == d, errc::internal,
          "generator sweep failed to reach the Frattini quotient rank");
  return picks;
}

std::vector<Subgroup> maximal_subgroups(const Subgroup& s, const Subgroup* phi_hint) {
  const GroupPtr& g = s.parent;
  const Int p = g->prime();
  const Subgroup phi = phi_hint ? *phi_hint : frattini(s);
  const Int d = s.order_exp() - phi.order_exp();
  std::vector<Subgroup> out;
  if (d == 0) return out;
  const std::vector<std::int32_t> basis = witness_generators(s, phi);
  // hyperplane kernels of functionals with leading coefficient 1
  std::vector<Int> normal(static_cast<std::size_t>(d), 0);
  auto emit = [&](Int lead) {
    std::vector<std::int32_t> words = phi.gens;
    for (Int j = 0; j < d; ++j) {
      if (j == lead) continue;
      const Int cj = normal[static_cast<std::size_t>(j)];
      // basis[j] * basis[lead]^(-cj) lies in the kernel
      const std::int32_t w =
          g->compose_ids(basis[static_cast<std::size_t>(j)],
                         g->pow_id(basis[static_cast<std::size_t>(lead)], (p - cj) % p));
      words.push_back(w);
    }
    Subgroup h = subgroup_closure(g, words);
    require(h.order_exp() == s.order_exp() - 1, errc::internal,
            "hyperplane subgroup has the wrong index");
    out.push_back(std::move(h));
  };
  // enumerate normals (0,..,0,1,c_{t+1},..,c_d) with free coordinates after the lead
  for (Int lead = 0; lead < d; ++lead) {
    for (Int j = 0; j < lead; ++j) normal[static_cast<std::size_t>(j)] = 0;
    normal[static_cast<std::size_t>(lead)] = 1;
    const Int free = d - lead - 1;
    Int total = 1;
    for (Int j = 0; j < free; ++j) total *= p;
    for (Int code = 0; code < total; ++code) {
      Int c = code;
      for (Int j = lead + 1; j < d; ++j) {
        normal[static_cast<std::size_t>(j)] = c % p;
        c /= p;
      }
      emit(lead);
    }
  }
  Int expected = 1;
  for (Int j = 0; j < d; ++j) expected *= p;
  expected = (expected - 1) / (p - 1);
  require(static_cast<Int>(out.size()) == expected, errc::internal,
          "maximal subgroup count mismatch");
  return out;
}

std::vector<SubgroupRecord> all_subgroups_up_to_index(const GroupPtr& g, Int max_exp) {
  std::vector<SubgroupRecord> out;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  auto add_record = [&](Subgroup&& sub) -> bool {
    const std::uint64_t h = hash_ids(sub.ids);
    auto& bucket = seen[h];
    for (std::size_t idx : bucket)
      if (out[idx].sub.ids == sub.ids) return false;
    SubgroupRecord rec;
    rec.index_exp = g->order_exp() - sub.order_exp();
    rec.sub = std::move(sub);
    rec.phi = frattini(rec.sub);
    rec.d = rec.sub.order_exp() - rec.phi.order_exp();
    bucket.push_back(out.size());
    out.push_back(std::move(rec));
    return true;
  };
  add_record(whole_group(g));
  std::size_t level_begin = 0;
  for (Int depth = 0; depth < max_exp; ++depth) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      std::vector<Subgroup> maxes = maximal_subgroups(out[i].sub, &out[i].phi);
      for (Subgroup& m : maxes) add_record(std::move(m));
    }
    level_begin = level_end;
  }
  std::sort(out.begin(), out.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
    if (a.index_exp != b.index_exp) return a.index_exp < b.index_exp;
    return a.sub.ids < b.sub.ids;
  });
  return out;
}

std::vector<Subgroup> frattini_series(const GroupPtr& g, Int length) {
  std::vector<Subgroup> out;
  out.push_back(whole_group(g));
  for (Int j = 0; j < length; ++j) {
    if (out.back().order() == 1) {
      Subgroup t = out.back();
      out.push_back(std::move(t));
      continue;
    }
    out.push_back(frattini(out.back()));
  }
  return out;
}

}  // namespace gennum::pgroup
