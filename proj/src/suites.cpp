#include "geomkit/suites.hpp"

#include "geomkit/error.hpp"
#include "geomkit/random.hpp"

namespace geomkit {

namespace {

void note(SuiteReport& r, const std::string& what) {
  ++r.failures;
  if (r.notes.size() < 10) r.notes.push_back(what);
}

// (1, v) -> (1 + omega v, a + M v) as an (n+1) x (n+1) block matrix.
SemilinearMap block(const Matrix& M, const Vec& top, const Vec& left, Elem corner, const FieldMorphism& sigma) {
  Matrix B(M.field(), M.rows() + 1, M.cols() + 1);
  B(0, 0) = corner;
  for (std::size_t c = 0; c < M.cols(); ++c) B(0, c + 1) = top[c];
  for (std::size_t r = 0; r < M.rows(); ++r) {
    B(r + 1, 0) = left[r];
    for (std::size_t c = 0; c < M.cols(); ++c) B(r + 1, c + 1) = M(r, c);
  }
  return SemilinearMap{B, sigma};
}

void check_extension(SuiteReport& r, const GeoMap& f, const ProjectiveClosure& target, const SemilinearMap& model,
                     unsigned workers, const std::string& label) {
  ++r.runs;
  try {
    ExtensionOptions opts;
    opts.workers = workers;
    const auto res = extend_to_closure(into_closure(f, target), opts);
    if (!res.success() || !res.unique) return note(r, label + ": extension failed or not unique");
    const auto& ext = *res.extension;
    if (ext.exceptional.intersects(~res.closure.hyperplane)) return note(r, label + ": E leaves the hyperplane");
    if (is_injective(f) != ext.exceptional.none()) return note(r, label + ": injectivity and E disagree");
    const auto expected = projectivize_map(res.closure.projective, target.projective, model);
    if (expected.exceptional != ext.exceptional || expected.images != ext.images)
      return note(r, label + ": differs from the block matrix");
    if (ext.exceptional.none() && is_embedding(f) && !is_embedding(*as_total(ext)))
      note(r, label + ": extension of an embedding is not an embedding");
  } catch (const GeomError& e) {
    note(r, label + ": " + e.what());
  }
}

}  // namespace

SuiteReport extension_suite(std::uint64_t seed, std::size_t semiaffine_count, std::size_t fractional_count,
                            unsigned workers) {
  SuiteReport r{"extension", 0, 0, {}};
  Rng rng(seed);
  const Field K5 = field_parse("5"), K3 = field_parse("3"), K9 = field_parse("9");
  auto A5 = affine_space(K5, 2);
  const auto C5 = projective_closure(A5);
  for (std::size_t i = 0; i < semiaffine_count; ++i) {
    const auto d = random_semiaffine(rng, K5, K5, 2, 2);
    const auto f = semiaffine_map(A5, A5, d);
    check_extension(r, f, C5, block(d.differential.matrix, Vec(2, 0), d.translation, 1, d.sigma()), workers,
                    "semiaffine #" + std::to_string(i));
  }
  auto A3 = affine_space(K3, 2), A9 = affine_space(K9, 2);
  const auto C9 = projective_closure(A9);
  for (std::size_t i = 0; i < fractional_count; ++i) {
    const auto d = random_fractional(rng, K3, K9, 2, 2);
    const auto f = fractional_map(A3, A9, d);
    check_extension(r, f, C9, block(d.psi.matrix, d.omega.matrix.row(0), Vec(2, 0), 1, d.sigma()), workers,
                    "fractional #" + std::to_string(i));
  }
  return r;
}

SuiteReport decomposition_suite(std::uint64_t seed, std::size_t count) {
  SuiteReport r{"decomposition", 0, 0, {}};
  Rng rng(seed);
  const std::vector<std::pair<std::string, std::string>> pairs{{"5", "5"}, {"7", "7"}, {"3", "9"}};
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [ks, k2s] = pairs[i % pairs.size()];
    const Field K = field_parse(ks), K2 = field_parse(k2s);
    auto A = affine_space(K, 2), B = affine_space(K2, 2);
    const auto d = random_fractional(rng, K, K2, 2, 2);
    const std::string label = "GF(" + ks + ")->GF(" + k2s + ") #" + std::to_string(i);
    ++r.runs;
    try {
      const auto f = fractional_map(A, B, d);
      if (!is_morphism(f).is_morphism) {
        note(r, label + ": fractional map is not a morphism");
        continue;
      }
      const auto dd = fractional_decompose(f);
      if (fractional_map(A, B, dd).images != f.images) note(r, label + ": round trip differs");
      if (K == K2 && K->degree() == 1 && !dd.sigma().is_identity()) note(r, label + ": sigma is not the identity");
    } catch (const GeomError& e) {
      note(r, label + ": " + e.what());
    }
  }
  return r;
}

}  // namespace geomkit
