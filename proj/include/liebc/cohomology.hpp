#pragma once

// Dolbeault, Bott-Chern, Aeppli and total (de Rham) cohomology of the
// invariant bicomplex, computed exactly.
//
// For a kind with closedness map K and exactness map E on a space V, the
// representatives span ker K intersected with the coefficient-orthogonal
// complement of im E, i.e. ker [K; E^H]. That subspace does not depend on the
// monomial enumeration, and its reduced echelon basis in canonical monomial
// order is the canonical representative basis.

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <sstream>
#include <string>
#include <vector>

#include "liebc/hodge.hpp"

namespace liebc {

enum class CohomologyKind { dolbeault, bott_chern, aeppli, de_rham };

inline const char* kind_name(CohomologyKind k) {
  switch (k) {
    case CohomologyKind::dolbeault: return "dolbeault";
    case CohomologyKind::bott_chern: return "bott_chern";
    case CohomologyKind::aeppli: return "aeppli";
    case CohomologyKind::de_rham: return "de_rham";
  }
  return "?";
}

inline std::optional<CohomologyKind> parse_kind(const std::string& s) {
  for (auto k : {CohomologyKind::dolbeault, CohomologyKind::bott_chern, CohomologyKind::aeppli, CohomologyKind::de_rham})
    if (s == kind_name(k)) return k;
  if (s == "bc") return CohomologyKind::bott_chern;
  if (s == "a") return CohomologyKind::aeppli;
  return std::nullopt;
}

// A direct sum of bidegree blocks; de Rham degree k is the sum over p+q = k.
class GradedSpace {
 public:
  GradedSpace(const Bicomplex& bc, std::vector<std::pair<int, int>> pieces) : bc_(&bc) {
    for (auto [p, q] : pieces) {
      if (p < 0 || q < 0 || p > bc.n() || q > bc.n()) continue;
      pieces_.push_back({p, q});
      offsets_.push_back(dim_);
      dim_ += bc.dim(p, q);
    }
  }
  static GradedSpace bidegree(const Bicomplex& bc, int p, int q) { return GradedSpace(bc, {{p, q}}); }
  static GradedSpace total(const Bicomplex& bc, int k) {
    std::vector<std::pair<int, int>> pieces;
    for (int p = 0; p <= k; ++p) pieces.push_back({p, k - p});
    return GradedSpace(bc, pieces);
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::pair<int, int>>& pieces() const { return pieces_; }
  std::size_t offset(int p, int q) const {
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (pieces_[i] == std::pair{p, q}) return offsets_[i];
    return npos;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool contains(const Form& x) const {
    for (const auto& [m, c] : x.terms())
      if (offset(m.p(), m.q()) == npos) return false;
    return true;
  }

  SparseVec to_vector(const Form& x) const {
    SparseVec v;
    for (const auto& [m, c] : x.terms()) {
      std::size_t off = offset(m.p(), m.q());
      if (off == npos) throw Error(ErrorCode::bidegree_mismatch, "term " + m.label() + " lies outside the space");
      v.emplace_back(static_cast<std::uint32_t>(off + bc_->index_of(m)), c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  Form to_form(const SparseVec& v) const {
    Form f(bc_->n());
    for (const auto& [i, c] : v) f.add(monomial(i), c);
    return f;
  }

  Monomial monomial(std::size_t i) const {
    for (std::size_t k = pieces_.size(); k-- > 0;)
      if (i >= offsets_[k]) return bc_->basis(pieces_[k].first, pieces_[k].second)[i - offsets_[k]];
    throw Error(ErrorCode::invalid_argument, "index outside the space");
  }

 private:
  const Bicomplex* bc_;
  std::vector<std::pair<int, int>> pieces_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

// Runs body(0..count-1) on a pool of threads; exceptions are rethrown in the caller.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < count;) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

// Places bidegree blocks into a map between graded spaces.
class Assembler {
 public:
  Assembler(const GradedSpace& src, const GradedSpace& tgt) : src_(src), tgt_(tgt), cols_(src.dim()) {}

  void add(const GradedBlockMap& block) {
    std::size_t so = src_.offset(block.source_p, block.source_q);
    std::size_t to = tgt_.offset(block.target_p, block.target_q);
    if (so == GradedSpace::npos || to == GradedSpace::npos) return;
    for (std::size_t c = 0; c < block.matrix.cols(); ++c)
      for (const auto& [r, x] : block.matrix.column(c)) cols_[so + c].emplace_back(static_cast<std::uint32_t>(to + r), x);
  }

  SparseMat build() {
    SparseMat m(tgt_.dim(), src_.dim());
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      std::map<std::uint32_t, FieldElement> acc;
      for (const auto& [r, x] : cols_[c]) acc[r] += x;
      SparseVec v;
      for (const auto& [r, x] : acc)
        if (!x.is_zero()) v.emplace_back(r, x);
      m.set_column(c, std::move(v));
    }
    return m;
  }

 private:
  const GradedSpace& src_;
  const GradedSpace& tgt_;
  std::vector<SparseVec> cols_;
};

inline GradedBlockMap product(const GradedBlockMap& second, const GradedBlockMap& first) {
  return {first.source_p, first.source_q, second.target_p, second.target_q, second.matrix * first.matrix};
}

}  // namespace detail

// Closedness map K : V -> W and exactness map E : U -> V of one cohomology group.
struct CohomologyMaps {
  GradedSpace space;
  GradedSpace target;
  SparseMat closed;
  SparseMat exact;
};

inline CohomologyMaps cohomology_maps(const Bicomplex& bc, CohomologyKind kind, int p, int q = 0) {
  using detail::Assembler;
  if (kind == CohomologyKind::de_rham) {
    const int k = p;
    auto V = GradedSpace::total(bc, k), W = GradedSpace::total(bc, k + 1), U = GradedSpace::total(bc, k - 1);
    Assembler K(V, W), E(U, V);
    for (int a = 0; a <= bc.n(); ++a) {
      K.add(bc.del(a, k - a));
      K.add(bc.delbar(a, k - a));
      E.add(bc.del(a, k - 1 - a));
      E.add(bc.delbar(a, k - 1 - a));
    }
    return {V, W, K.build(), E.build()};
  }
  auto V = GradedSpace::bidegree(bc, p, q);
  switch (kind) {
    case CohomologyKind::dolbeault: {
      auto W = GradedSpace::bidegree(bc, p, q + 1), U = GradedSpace::bidegree(bc, p, q - 1);
      Assembler K(V, W), E(U, V);
      K.add(bc.delbar(p, q));
      E.add(bc.delbar(p, q - 1));
      return {V, W, K.build(), E.build()};
    }
    case CohomologyKind::bott_chern: {
      auto W = GradedSpace(bc, {{p + 1, q}, {p, q + 1}}), U = GradedSpace::bidegree(bc, p - 1, q - 1);
      Assembler K(V, W), E(U, V);
      K.add(bc.del(p, q));
      K.add(bc.delbar(p, q));
      if (p >= 1 && q >= 1) E.add(detail::product(bc.del(p - 1, q), bc.delbar(p - 1, q - 1)));
      return {V, W, K.build(), E.build()};
    }
    case CohomologyKind::aeppli: {
      auto W = GradedSpace::bidegree(bc, p + 1, q + 1), U = GradedSpace(bc, {{p - 1, q}, {p, q - 1}});
      Assembler K(V, W), E(U, V);
      if (p + 1 <= bc.n() && q + 1 <= bc.n()) K.add(detail::product(bc.del(p, q + 1), bc.delbar(p, q)));
      E.add(bc.del(p - 1, q));
      E.add(bc.delbar(p, q - 1));
      return {V, W, K.build(), E.build()};
    }
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, "unknown cohomology kind");
}

struct CohomologyResult {
  CohomologyKind kind = CohomologyKind::dolbeault;
  int p = 0, q = 0;  // for de Rham, p is the total degree and q is unused
  std::size_t dimension = 0;
  std::size_t cocycle_dimension = 0;  // dim ker K
  std::size_t exact_rank = 0;         // rank E
  std::vector<Form> representatives;
};

namespace detail {

// Reduced echelon basis of span(vs) in canonical monomial order.
inline std::vector<Form> canonical_basis(const GradedSpace& V, const std::vector<SparseVec>& vs) {
  if (vs.empty()) return {};
  std::vector<Monomial> order;
  for (std::size_t i = 0; i < V.dim(); ++i) order.push_back(V.monomial(i));
  std::vector<std::size_t> perm(order.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return order[a] < order[b]; });
  std::vector<std::uint32_t> pos(order.size());
  for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = static_cast<std::uint32_t>(k);

  // Rows of the dense matrix are the vectors; restrict to the columns they touch.
  std::vector<std::uint32_t> support;
  for (const auto& v : vs)
    for (const auto& [i, x] : v) support.push_back(pos[i]);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  ExactMatrix m(vs.size(), support.size());
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (const auto& [i, x] : vs[r]) m(r, std::lower_bound(support.begin(), support.end(), pos[i]) - support.begin()) = x;
  auto piv = rref(m);
  std::vector<Form> out;
  for (std::size_t r = 0; r < piv.size(); ++r) {
    SparseVec v;
    for (std::size_t c = 0; c < support.size(); ++c)
      if (!m(r, c).is_zero()) v.emplace_back(static_cast<std::uint32_t>(perm[support[c]]), m(r, c));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(V.to_form(v));
  }
  return out;
}

}  // namespace detail

inline CohomologyResult compute_cohomology(const Bicomplex& bc, CohomologyKind kind, int p, int q = 0) {
  auto maps = cohomology_maps(bc, kind, p, q);
  CohomologyResult res;
  res.kind = kind;
  res.p = p;
  res.q = kind == CohomologyKind::de_rham ? 0 : q;
  if (maps.space.dim() == 0) return res;

  res.cocycle_dimension = maps.space.dim() - rank(maps.closed);
  res.exact_rank = rank(maps.exact);
  auto harmonic = kernel(SparseMat::vstack(maps.closed, maps.exact.adjoint()));
  res.dimension = harmonic.size();
  if (res.dimension != res.cocycle_dimension - res.exact_rank)
    throw Error(ErrorCode::invalid_argument, std::string("inconsistent ") + kind_name(kind) +
                                                 " elimination: harmonic dimension " + std::to_string(res.dimension) +
                                                 " vs cocycles minus boundaries " +
                                                 std::to_string(res.cocycle_dimension - res.exact_rank));
  res.representatives = detail::canonical_basis(maps.space, harmonic);
  return res;
}

inline CohomologyResult dolbeault(const Bicomplex& bc, int p, int q) {
  return compute_cohomology(bc, CohomologyKind::dolbeault, p, q);
}
inline CohomologyResult bott_chern(const Bicomplex& bc, int p, int q) {
  return compute_cohomology(bc, CohomologyKind::bott_chern, p, q);
}
inline CohomologyResult aeppli(const Bicomplex& bc, int p, int q) {
  return compute_cohomology(bc, CohomologyKind::aeppli, p, q);
}
inline CohomologyResult de_rham(const Bicomplex& bc, int k) { return compute_cohomology(bc, CohomologyKind::de_rham, k); }

struct Diamond {
  CohomologyKind kind = CohomologyKind::dolbeault;
  std::string model;
  int n = 0;
  std::vector<std::vector<std::size_t>> table;  // table[p][q]; for de Rham a single row of Betti numbers

  friend bool operator==(const Diamond& a, const Diamond& b) { return a.n == b.n && a.table == b.table; }
};

// Bidegrees are independent; threads = 0 uses the hardware concurrency.
inline Diamond diamond(const Bicomplex& bc, CohomologyKind kind, const std::string& model = "", unsigned threads = 0) {
  Diamond d;
  d.kind = kind;
  d.model = model;
  d.n = bc.n();
  if (kind == CohomologyKind::de_rham) {
    d.table.emplace_back();
    for (int k = 0; k <= 2 * bc.n(); ++k) d.table[0].push_back(de_rham(bc, k).dimension);
    return d;
  }
  d.table.assign(bc.n() + 1, std::vector<std::size_t>(bc.n() + 1));
  std::vector<std::pair<int, int>> jobs;
  for (int p = 0; p <= bc.n(); ++p)
    for (int q = 0; q <= bc.n(); ++q) jobs.push_back({p, q});
  parallel_for(jobs.size(), threads, [&](std::size_t k) {
    auto [p, q] = jobs[k];
    d.table[p][q] = compute_cohomology(bc, kind, p, q).dimension;
  });
  return d;
}

// Rows by total degree p+q, each listing h^{p,q} with p decreasing.
inline std::string render_diamond(const Diamond& d) {
  std::ostringstream out;
  if (d.kind == CohomologyKind::de_rham) {
    for (std::size_t k = 0; k < d.table[0].size(); ++k) out << (k ? " " : "") << d.table[0][k];
    out << "\n";
    return out.str();
  }
  const int n = d.n;
  for (int r = 0; r <= 2 * n; ++r) {
    int count = std::min(r, n) - std::max(0, r - n) + 1;
    std::string line(2 * (n + 1 - count), ' ');
    bool first = true;
    for (int p = std::min(r, n); p >= std::max(0, r - n); --p) {
      if (!first) line += "   ";
      line += std::to_string(d.table[p][r - p]);
      first = false;
    }
    out << line << "\n";
  }
  return out.str();
}

inline long long euler_characteristic(const Diamond& d) {
  long long chi = 0;
  if (d.kind == CohomologyKind::de_rham) {
    for (std::size_t k = 0; k < d.table[0].size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long long>(d.table[0][k]);
    return chi;
  }
  for (int p = 0; p <= d.n; ++p)
    for (int q = 0; q <= d.n; ++q) chi += ((p + q) % 2 ? -1 : 1) * static_cast<long long>(d.table[p][q]);
  return chi;
}

// Closedness verdict and class coordinates against the canonical representatives.
struct ClassVerdict {
  bool closed = false;
  Form obstruction;                       // K x when not closed
  std::vector<FieldElement> coordinates;  // one per representative
  bool exact() const {
    return closed && std::all_of(coordinates.begin(), coordinates.end(), [](const auto& c) { return c.is_zero(); });
  }
};

class CohomologyClassifier {
 public:
  CohomologyClassifier(const Bicomplex& bc, CohomologyKind kind, int p, int q = 0)
      : maps_(cohomology_maps(bc, kind, p, q)), result_(compute_cohomology(bc, kind, p, q)) {
    system_ = maps_.exact;
    for (const auto& r : result_.representatives) {
      SparseMat col(maps_.space.dim(), 1);
      col.set_column(0, maps_.space.to_vector(r));
      system_ = SparseMat::hstack(system_, col);
    }
  }

  const CohomologyResult& result() const { return result_; }
  const GradedSpace& space() const { return maps_.space; }

  ClassVerdict classify(const Form& x) const {
    if (!maps_.space.contains(x))
      throw Error(ErrorCode::bidegree_mismatch,
                  std::string("form is not in the space of the ") + kind_name(result_.kind) + " group");
    ClassVerdict v;
    SparseVec vec = maps_.space.to_vector(x);
    SparseVec image = maps_.closed.apply(vec);
    if (!image.empty()) {
      v.obstruction = maps_.target.to_form(image);
      return v;
    }
    v.closed = true;
    auto y = solve(system_, vec);
    if (!y) throw Error(ErrorCode::invalid_argument, "closed form outside cocycles plus representatives");
    const std::size_t e = maps_.exact.cols();
    v.coordinates.assign(result_.representatives.size(), FieldElement());
    for (const auto& [i, c] : *y)
      if (i >= e) v.coordinates[i - e] = c;
    return v;
  }

 private:
  CohomologyMaps maps_;
  CohomologyResult result_;
  SparseMat system_;
};

inline ClassVerdict class_of(const Bicomplex& bc, const Form& x, CohomologyKind kind) {
  if (x.is_zero()) throw Error(ErrorCode::bidegree_mismatch, "the zero form has no bidegree");
  int p, q = 0;
  if (kind == CohomologyKind::de_rham) {
    p = x.terms().begin()->first.degree();
  } else {
    auto bd = x.bidegree();
    if (!bd) throw Error(ErrorCode::bidegree_mismatch, "form is not homogeneous: " + x.to_string());
    std::tie(p, q) = *bd;
  }
  return CohomologyClassifier(bc, kind, p, q).classify(x);
}

// Bott-Chern/Aeppli duality under the Hodge star of the metric h. Dimensions are
// compared on every bidegree; with check_representatives, the Bott-Chern
// representatives are made harmonic (orthogonal to im del delbar in the metric
// pairing) and their stars must be del delbar-closed and independent in Aeppli
// cohomology.
struct DualityReport {
  bool pass = true;
  int p = 0, q = 0;
  std::string reason;
};

inline Form harmonic_part(const Bicomplex& bc, const ExactMatrix& h, const CohomologyMaps& maps, const Form& x) {
  if (maps.exact.cols() == 0 || maps.exact.is_zero()) return x;
  auto [p, q] = maps.space.pieces().front();
  ExactMatrix qm = monomial_gram(bc, h, p, q).conjugate();
  ExactMatrix e = maps.exact.to_dense();
  ExactMatrix eh = e.adjoint() * qm;
  ExactMatrix xv(maps.space.dim(), 1);
  for (const auto& [i, c] : maps.space.to_vector(x)) xv(i, 0) = c;
  ExactMatrix rhs = eh * xv;
  SparseVec r;
  for (std::size_t i = 0; i < rhs.rows(); ++i)
    if (!rhs(i, 0).is_zero()) r.emplace_back(static_cast<std::uint32_t>(i), rhs(i, 0));
  auto y = solve(SparseMat::from_dense(eh * e), r);
  if (!y) throw Error(ErrorCode::singular_metric, "normal equations of the harmonic projection are inconsistent");
  return x - maps.space.to_form(maps.exact.apply(*y));
}

inline DualityReport duality_check(const Bicomplex& bc, const ExactMatrix& h, bool check_representatives = true) {
  const int n = bc.n();
  DualityReport rep;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      auto fail = [&](std::string why) {
        rep = {false, p, q, std::move(why)};
        return rep;
      };
      auto bcr = bott_chern(bc, p, q);
      if (!check_representatives) {
        auto a = aeppli(bc, n - q, n - p);
        if (a.dimension != bcr.dimension)
          return fail("dim H_BC = " + std::to_string(bcr.dimension) + " but dim H_A(" + std::to_string(n - q) + "," +
                      std::to_string(n - p) + ") = " + std::to_string(a.dimension));
        continue;
      }
      CohomologyClassifier aeppli_group(bc, CohomologyKind::aeppli, n - q, n - p);
      if (aeppli_group.result().dimension != bcr.dimension)
        return fail("dim H_BC = " + std::to_string(bcr.dimension) + " but dim H_A(" + std::to_string(n - q) + "," +
                    std::to_string(n - p) + ") = " + std::to_string(aeppli_group.result().dimension));
      if (bcr.dimension == 0) continue;
      auto maps = cohomology_maps(bc, CohomologyKind::bott_chern, p, q);
      ExactMatrix coords(bcr.dimension, bcr.dimension);
      for (std::size_t k = 0; k < bcr.dimension; ++k) {
        Form star = hodge_star(h, harmonic_part(bc, h, maps, bcr.representatives[k]));
        auto v = aeppli_group.classify(star);
        if (!v.closed) return fail("star of representative " + std::to_string(k + 1) + " is not del delbar-closed");
        for (std::size_t j = 0; j < bcr.dimension; ++j) coords(k, j) = v.coordinates[j];
      }
      if (rank(coords) != bcr.dimension) return fail("stars of the representatives are dependent in Aeppli cohomology");
    }
  return rep;
}

}  // namespace liebc
