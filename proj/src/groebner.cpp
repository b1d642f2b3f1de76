#include "lforge/groebner.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace lforge {

// ---------------------------------------------------------------------------
// IdealBasis

IdealBasis::IdealBasis(Ring ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (!g.ring()->compatible(*ring_)) throw RingMismatch("generator from a different ring");
    if (g.is_zero()) continue;
    gens_.push_back(g.in_ring(ring_));
  }
}

IdealBasis IdealBasis::parse(const Ring& ring, const std::vector<std::string>& generators) {
  std::vector<Polynomial> polys;
  for (const auto& s : generators) polys.push_back(parse_polynomial(s, ring));
  return IdealBasis(ring, std::move(polys));
}

bool IdealBasis::is_homogeneous() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& p) { return p.is_homogeneous(); });
}

IdealBasis IdealBasis::operator+(const IdealBasis& o) const {
  if (!ring_->compatible(*o.ring_)) throw RingMismatch("ideals belong to different rings");
  std::vector<Polynomial> all = gens_;
  for (const auto& g : o.gens_) all.push_back(g.in_ring(ring_));
  return IdealBasis(ring_, std::move(all));
}

IdealBasis IdealBasis::in_ring(const Ring& target) const { return IdealBasis(target, gens_); }

// ---------------------------------------------------------------------------
// GroebnerBasis

GroebnerBasis::GroebnerBasis(Ring ring, std::vector<Polynomial> reduced) : ring_(std::move(ring)), elems_(std::move(reduced)) {
  for (const auto& e : elems_) lms_.push_back(e.leading_monomial());
}

bool GroebnerBasis::is_unit() const { return elems_.size() == 1 && elems_[0].leading_monomial().is_one(); }

// ---------------------------------------------------------------------------
// Reduction

namespace {

struct Reducer {
  const Polynomial* poly;
  Monomial lm;
  Scalar inv_lc;
};

const Reducer* find_reducer(const Monomial& m, const std::vector<Reducer>& reducers) {
  for (const auto& r : reducers)
    if (r.lm.divides(m)) return &r;
  return nullptr;
}

// Full reduction. The working polynomial is kept in ascending order so the
// current leading term is popped from the back.
Polynomial full_reduce(const Polynomial& f, const std::vector<Reducer>& reducers) {
  const Ring& ring = f.ring();
  const PolyRing& R = *ring;
  const Field& K = R.field();
  std::vector<Term> remainder;
  std::vector<Term> work(f.terms().rbegin(), f.terms().rend());
  std::vector<Term> next;
  while (!work.empty()) {
    const Reducer* r = find_reducer(work.back().mono, reducers);
    if (!r) {
      remainder.push_back(std::move(work.back()));
      work.pop_back();
      continue;
    }
    Scalar c = K.mul(K.neg(work.back().coeff), r->inv_lc);
    Monomial m = r->lm.quotient_of(work.back().mono);
    work.pop_back();
    const auto& rt = r->poly->terms();
    next.clear();
    next.reserve(work.size() + rt.size());
    // rt[0] cancels the popped lead; merge the rest ascending.
    auto wi = work.begin(), we = work.end();
    std::size_t gi = rt.size();
    while (gi > 1 || wi != we) {
      if (gi <= 1) {
        next.push_back(std::move(*wi++));
        continue;
      }
      Monomial gm = rt[gi - 1].mono * m;
      if (wi == we) {
        next.push_back({K.mul(c, rt[gi - 1].coeff), gm});
        --gi;
        continue;
      }
      int cmp = R.compare(wi->mono, gm);
      if (cmp < 0) {
        next.push_back(std::move(*wi++));
      } else if (cmp > 0) {
        next.push_back({K.mul(c, rt[gi - 1].coeff), gm});
        --gi;
      } else {
        Scalar s = K.add(wi->coeff, K.mul(c, rt[gi - 1].coeff));
        if (!K.is_zero(s)) next.push_back({std::move(s), wi->mono});
        ++wi;
        --gi;
      }
    }
    std::swap(work, next);
  }
  return from_sorted_terms(ring, std::move(remainder));
}

std::vector<Reducer> make_reducers(const std::vector<Polynomial>& polys) {
  std::vector<Reducer> out;
  out.reserve(polys.size());
  for (const auto& p : polys)
    if (!p.is_zero()) out.push_back({&p, p.leading_monomial(), p.ring()->field().inv(p.leading_coeff())});
  return out;
}

class BuchbergerEngine {
 public:
  BuchbergerEngine(Ring ring, std::optional<std::uint32_t> bound) : ring_(std::move(ring)), bound_(bound) {}

  // Returns false once the unit ideal is detected.
  bool add_generator(const Polynomial& f) {
    Polynomial h = full_reduce(f, active_reducers());
    if (h.is_zero()) return true;
    return insert(h.monic());
  }

  void run() {
    if (unit_) return;
    for (;;) {
      auto next = select_pair();
      if (!next) break;
      Pair p = pairs_[*next];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(*next));
      Polynomial s = s_polynomial(polys_[p.i], polys_[p.j]);
      Polynomial h = full_reduce(s, active_reducers());
      if (h.is_zero()) continue;
      if (!insert(h.monic())) return;
    }
  }

  std::vector<Polynomial> reduced_basis() const {
    if (unit_) return {Polynomial::constant(ring_, 1)};
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) minimal.push_back(polys_[i]);
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Polynomial> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      const Term& lead = minimal[i].leading_term();
      std::vector<Term> tail(minimal[i].terms().begin() + 1, minimal[i].terms().end());
      Polynomial t = full_reduce(from_sorted_terms(ring_, std::move(tail)), make_reducers(others));
      std::vector<Term> terms{lead};
      terms.insert(terms.end(), t.terms().begin(), t.terms().end());
      out.push_back(from_sorted_terms(ring_, std::move(terms)).monic());
    }
    const PolyRing& R = *ring_;
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
      return R.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return out;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  std::vector<Reducer> active_reducers() const {
    std::vector<Reducer> out;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) out.push_back({&polys_[i], polys_[i].leading_monomial(), ring_->field().one()});
    return out;
  }

  std::optional<std::size_t> select_pair() const {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const Pair& p = pairs_[k];
      if (bound_ && p.lcm.degree() > *bound_) continue;
      if (!best) {
        best = k;
        continue;
      }
      const Pair& b = pairs_[*best];
      auto key = [](const Pair& q) { return std::tuple(q.lcm.degree(), q.j, q.i); };
      if (key(p) < key(b)) best = k;
    }
    return best;
  }

  // Gebauer-Moeller installation of the product and chain criteria.
  bool insert(Polynomial h) {
    if (h.leading_monomial().is_one()) {
      unit_ = true;
      return false;
    }
    const std::size_t k = polys_.size();
    const Monomial hlm = h.leading_monomial();
    polys_.push_back(std::move(h));
    active_.push_back(true);

    std::vector<Pair> candidates;
    for (std::size_t i = 0; i < k; ++i)
      if (active_[i]) candidates.push_back({i, k, polys_[i].leading_monomial().lcm(hlm)});

    auto coprime = [&](const Pair& p) { return polys_[p.i].leading_monomial().coprime(hlm); };

    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool dominated = false;
      if (!coprime(p)) {
        for (std::size_t b = a + 1; b < candidates.size() && !dominated; ++b)
          dominated = candidates[b].lcm.divides(p.lcm);
        for (std::size_t b = 0; b < kept.size() && !dominated; ++b) dominated = kept[b].lcm.divides(p.lcm);
      }
      if (!dominated) kept.push_back(p);
    }
    std::vector<Pair> fresh;
    for (const auto& p : kept)
      if (!coprime(p)) fresh.push_back(p);

    std::vector<Pair> survivors;
    for (const auto& p : pairs_) {
      bool drop = hlm.divides(p.lcm) && !(polys_[p.i].leading_monomial().lcm(hlm) == p.lcm) &&
                  !(polys_[p.j].leading_monomial().lcm(hlm) == p.lcm);
      if (!drop) survivors.push_back(p);
    }
    survivors.insert(survivors.end(), fresh.begin(), fresh.end());
    pairs_ = std::move(survivors);

    for (std::size_t i = 0; i < k; ++i)
      if (active_[i] && hlm.divides(polys_[i].leading_monomial())) active_[i] = false;
    return true;
  }

  Ring ring_;
  std::optional<std::uint32_t> bound_;
  std::vector<Polynomial> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
};

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Field& K = f.ring()->field();
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.times_term(K.inv(f.leading_coeff()), f.leading_monomial().quotient_of(l));
  return add_scaled(a, K.neg(K.inv(g.leading_coeff())), g.leading_monomial().quotient_of(l), g);
}

GroebnerBasis buchberger(const IdealBasis& ideal, const MonomialOrder& order, const BuchbergerOptions& opts) {
  Ring ring = with_order(ideal.ring(), order);
  if (opts.degree_bound && !ideal.is_homogeneous())
    throw std::invalid_argument("degree-bounded Groebner bases need homogeneous input");
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.in_ring(ring));
  std::stable_sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  BuchbergerEngine engine(ring, opts.degree_bound);
  for (const auto& g : gens) {
    if (opts.degree_bound && g.leading_monomial().degree() > *opts.degree_bound) continue;
    if (!engine.add_generator(g)) break;
  }
  engine.run();
  return GroebnerBasis(ring, engine.reduced_basis());
}

GroebnerBasis buchberger(const IdealBasis& ideal) { return buchberger(ideal, ideal.ring()->order()); }

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g) {
  if (!(*f.ring() == *g.ring())) throw RingMismatch("normal_form: polynomial and basis use different rings or orders");
  return full_reduce(f, make_reducers(g.elements()));
}

Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  for (const auto& d : divisors)
    if (!(*d.ring() == *f.ring())) throw RingMismatch("reduce_by: mixed rings");
  return full_reduce(f, make_reducers(divisors));
}

// ---------------------------------------------------------------------------
// Dimension

namespace {

// Smallest set of variables meeting every mask.
int min_hitting_set(std::vector<std::uint32_t> masks, int budget) {
  if (masks.empty()) return 0;
  if (budget <= 0) return budget + 1;
  auto pick = std::min_element(masks.begin(), masks.end(),
                               [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  std::uint32_t chosen = *pick;
  int best = budget + 1;
  for (std::uint32_t bits = chosen; bits; bits &= bits - 1) {
    std::uint32_t v = bits & (~bits + 1);
    std::vector<std::uint32_t> rest;
    for (auto m : masks)
      if (!(m & v)) rest.push_back(m);
    int sub = min_hitting_set(std::move(rest), std::min(budget, best - 1) - 1);
    if (sub + 1 < best) best = sub + 1;
  }
  return best;
}

}  // namespace

int krull_dimension(const GroebnerBasis& g) {
  const int n = static_cast<int>(g.ring()->num_vars());
  if (g.is_unit()) return -1;
  std::vector<std::uint32_t> masks;
  for (const auto& m : g.leading_monomials()) masks.push_back(m.support());
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<std::uint32_t> minimal;
  for (auto m : masks) {
    bool redundant = std::any_of(masks.begin(), masks.end(), [&](std::uint32_t o) { return o != m && (o & m) == o; });
    if (!redundant) minimal.push_back(m);
  }
  return n - min_hitting_set(std::move(minimal), n);
}

int height(const IdealBasis& ideal) {
  if (!ideal.is_homogeneous()) throw std::invalid_argument("height: ideal is not homogeneous");
  GroebnerBasis g = buchberger(ideal, MonomialOrder::grevlex());
  return static_cast<int>(ideal.ring()->num_vars()) - krull_dimension(g);
}

// ---------------------------------------------------------------------------
// Ring changes for elimination

namespace {

// Maps variable i of f's ring to variable index_map[i] of target.
Polynomial remap(const Polynomial& f, const Ring& target, const std::vector<std::size_t>& index_map) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < f.ring()->num_vars(); ++i)
      if (t.mono[i]) m.set(index_map[i], t.mono[i]);
    terms.push_back({t.coeff, m});
  }
  return Polynomial(target, std::move(terms));
}

std::vector<std::size_t> shifted(std::size_t n, std::size_t offset) {
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i + offset;
  return map;
}

std::string fresh_name(const PolyRing& ring, const std::string& base) {
  std::string name = base;
  while (ring.var_index(name)) name += "_";
  return name;
}

}  // namespace

IdealBasis eliminate(const IdealBasis& ideal, std::size_t count) {
  const Ring& ring = ideal.ring();
  if (count >= ring->num_vars()) throw std::invalid_argument("cannot eliminate every variable");
  GroebnerBasis g = buchberger(ideal, MonomialOrder::elimination(count));
  std::vector<std::string> names(ring->var_names().begin() + static_cast<std::ptrdiff_t>(count), ring->var_names().end());
  Ring target = make_ring(names, ring->field(), MonomialOrder::grevlex());
  std::vector<std::size_t> map(ring->num_vars(), 0);
  for (std::size_t i = count; i < ring->num_vars(); ++i) map[i] = i - count;
  std::vector<Polynomial> kept;
  std::uint32_t block_mask = (count >= 32) ? ~0u : ((1u << count) - 1);
  for (const auto& e : g.elements()) {
    bool uses_block = false;
    for (const auto& t : e.terms()) uses_block |= (t.mono.support() & block_mask) != 0;
    if (!uses_block) kept.push_back(remap(e, target, map));
  }
  return IdealBasis(target, std::move(kept));
}

namespace {

struct Extended {
  Ring ring;  // fresh variable first, then the original variables
  std::vector<std::size_t> embed;
};

Extended extend_by_one(const Ring& ring, const std::string& base) {
  std::vector<std::string> names{fresh_name(*ring, base)};
  names.insert(names.end(), ring->var_names().begin(), ring->var_names().end());
  return {make_ring(names, ring->field(), MonomialOrder::elimination(1)), shifted(ring->num_vars(), 1)};
}

IdealBasis back_to(const IdealBasis& eliminated, const Ring& original) {
  std::vector<std::size_t> id = shifted(original->num_vars(), 0);
  std::vector<Polynomial> gens;
  for (const auto& g : eliminated.generators()) gens.push_back(remap(g, original, id));
  return IdealBasis(original, std::move(gens));
}

}  // namespace

IdealBasis intersect(const IdealBasis& a, const IdealBasis& b) {
  if (!a.ring()->compatible(*b.ring())) throw RingMismatch("intersect: different rings");
  Extended ext = extend_by_one(a.ring(), "t");
  Polynomial t = Polynomial::variable(ext.ring, 0);
  Polynomial one_minus_t = Polynomial::constant(ext.ring, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * remap(g, ext.ring, ext.embed));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * remap(g, ext.ring, ext.embed));
  return back_to(eliminate(IdealBasis(ext.ring, std::move(gens)), 1), a.ring());
}

IdealBasis ideal_quotient(const IdealBasis& ideal, const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("ideal_quotient: divisor is zero");
  IdealBasis fi(ideal.ring(), {f.in_ring(ideal.ring())});
  IdealBasis meet = intersect(ideal, fi);
  std::vector<Polynomial> gens;
  Polynomial fr = f.in_ring(meet.ring());
  for (const auto& g : meet.generators()) gens.push_back(divide_exact(g, fr));
  return IdealBasis(ideal.ring(), std::move(gens));
}

IdealBasis saturate_by(const IdealBasis& ideal, const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("saturate_by: divisor is zero");
  Extended ext = extend_by_one(ideal.ring(), "u");
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(remap(g, ext.ring, ext.embed));
  Polynomial u = Polynomial::variable(ext.ring, 0);
  gens.push_back(Polynomial::constant(ext.ring, 1) - u * remap(f, ext.ring, ext.embed));
  return back_to(eliminate(IdealBasis(ext.ring, std::move(gens)), 1), ideal.ring());
}

IdealBasis saturate_by_variable(const IdealBasis& ideal, std::size_t var) {
  const Ring& ring = ideal.ring();
  if (var >= ring->num_vars()) throw std::out_of_range("saturate_by_variable: variable index");
  if (!ideal.is_homogeneous()) throw std::invalid_argument("saturate_by_variable: ideal is not homogeneous");
  const std::size_t n = ring->num_vars();
  std::vector<std::size_t> to_perm(n), from_perm(n);
  std::vector<std::string> names;
  for (std::size_t i = 0, k = 0; i < n; ++i) {
    if (i == var) continue;
    to_perm[i] = k++;
    names.push_back(ring->var_names()[i]);
  }
  to_perm[var] = n - 1;
  names.push_back(ring->var_names()[var]);
  for (std::size_t i = 0; i < n; ++i) from_perm[to_perm[i]] = i;
  Ring permuted = make_ring(names, ring->field(), MonomialOrder::grevlex());
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(remap(g, permuted, to_perm));
  GroebnerBasis gb = buchberger(IdealBasis(permuted, std::move(gens)));
  std::vector<Polynomial> out;
  for (const auto& e : gb.elements()) {
    Polynomial stripped = divide_by_variable_power(e, n - 1, variable_valuation(e, n - 1));
    out.push_back(remap(stripped, ring, from_perm));
  }
  return IdealBasis(ring, std::move(out));
}

bool ideal_contains(const GroebnerBasis& big, const IdealBasis& small) {
  if (!big.ring()->compatible(*small.ring())) throw RingMismatch("ideal_contains: different rings");
  for (const auto& g : small.generators())
    if (!normal_form(g.in_ring(big.ring()), big).is_zero()) return false;
  return true;
}

bool ideal_contains(const IdealBasis& big, const IdealBasis& small) {
  if (!big.ring()->compatible(*small.ring())) throw RingMismatch("ideal_contains: different rings");
  if (small.is_zero()) return true;
  return ideal_contains(buchberger(big), small);
}

bool ideal_equal(const IdealBasis& a, const IdealBasis& b) { return ideal_contains(a, b) && ideal_contains(b, a); }

IdealBasis saturate_irrelevant(const IdealBasis& ideal) {
  if (!ideal.is_homogeneous()) throw std::invalid_argument("saturate_irrelevant: ideal is not homogeneous");
  if (ideal.is_zero()) return ideal;
  GroebnerBasis base = buchberger(ideal);
  std::vector<IdealBasis> larger;
  for (std::size_t v = 0; v < ideal.ring()->num_vars(); ++v) {
    IdealBasis s = saturate_by_variable(ideal, v);
    // I is contained in every I : x^inf, so one unchanged saturation pins
    // the intersection to I itself.
    if (ideal_contains(base, s)) return ideal;
    larger.push_back(std::move(s));
  }
  IdealBasis acc = larger.front();
  for (std::size_t i = 1; i < larger.size(); ++i) acc = intersect(acc, larger[i]);
  return IdealBasis(ideal.ring(), buchberger(acc).elements());
}

// ---------------------------------------------------------------------------
// Generator counts

std::size_t minimal_generator_count(const IdealBasis& ideal) {
  if (!ideal.is_homogeneous()) throw std::invalid_argument("minimal_generator_count: ideal is not homogeneous");
  std::vector<Polynomial> gens = ideal.generators();
  std::stable_sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
    return *a.total_degree() < *b.total_degree();
  });
  std::vector<Polynomial> kept;
  std::optional<GroebnerBasis> gb;
  std::uint32_t gb_degree = 0;
  for (const auto& g : gens) {
    std::uint32_t d = *g.total_degree();
    if (kept.empty()) {
      if (d == 0) return 1;  // a unit generator
      kept.push_back(g);
      gb.reset();
      continue;
    }
    if (!gb || gb_degree < d) {
      gb = buchberger(IdealBasis(ideal.ring(), kept), MonomialOrder::grevlex(), {.degree_bound = d});
      gb_degree = d;
    }
    if (!normal_form(g.in_ring(gb->ring()), *gb).is_zero()) {
      kept.push_back(g);
      gb.reset();
    }
  }
  return kept.size();
}

bool is_complete_intersection(const IdealBasis& ideal) {
  if (ideal.is_zero()) throw std::invalid_argument("is_complete_intersection: zero ideal");
  GroebnerBasis g = buchberger(ideal, MonomialOrder::grevlex());
  if (g.is_unit()) throw std::invalid_argument("is_complete_intersection: unit ideal");
  return minimal_generator_count(ideal) == static_cast<std::size_t>(height(ideal));
}

}  // namespace lforge
