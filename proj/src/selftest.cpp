#include "knotperc/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "knotperc/alexander.hpp"
#include "knotperc/known_knots.hpp"
#include "knotperc/pipeline.hpp"
#include "knotperc/random.hpp"
#include "knotperc/simplify.hpp"

namespace knotperc {
namespace {

OracleResult check(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string failure = body();
    return {name, failure.empty(), failure};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

std::string expect_invariants(const KnotCode& code, long minus1, long i_norm) {
  InvariantOptions both{true, true};
  const InvariantPair v = compute_invariants(code, both);
  std::ostringstream msg;
  if (*v.exact_minus1 != minus1 || *v.exact_i_norm != i_norm)
    msg << "exact " << *v.exact_minus1 << "," << *v.exact_i_norm << " expected " << minus1 << "," << i_norm
        << "; ";
  if (std::fabs(v.log_abs_minus1 - std::log(static_cast<double>(minus1))) > 1e-9 ||
      std::fabs(v.log_abs_i - 0.5 * std::log(static_cast<double>(i_norm))) > 1e-9)
    msg << "float logs " << v.log_abs_minus1 << "," << v.log_abs_i;
  return msg.str();
}

std::pair<mpz_class, mpz_class> exact_pair(const KnotCode& code) {
  const InvariantPair v = compute_invariants(code, {false, true});
  return {*v.exact_minus1, *v.exact_i_norm};
}

}  // namespace

std::vector<OracleResult> run_selftest(int random_codes, int size) {
  std::vector<OracleResult> out;

  out.push_back(check("trefoil table validates", [] {
    validate(trefoil_table());
    CodeTable bad = trefoil_table();
    bad.tau[0] = -1;
    try {
      validate(bad);
    } catch (const ValidationError& e) {
      return e.item() == 6 ? std::string() : "flipped tau reported item " + std::to_string(e.item());
    }
    return std::string("flipped tau accepted");
  }));

  out.push_back(check("trefoil invariants", [] { return expect_invariants(trefoil_code(), 3, 1); }));
  out.push_back(check("figure-eight invariants", [] { return expect_invariants(figure_eight_code(), 5, 9); }));
  out.push_back(check("unknot invariants", [] { return expect_invariants(KnotCode{}, 1, 1); }));
  out.push_back(check("connected sums multiply", [] {
    std::string msg = expect_invariants(connected_sum(trefoil_code(), trefoil_code()), 9, 1);
    if (msg.empty()) msg = expect_invariants(connected_sum(trefoil_code(), figure_eight_code()), 15, 9);
    return msg;
  }));

  // Random diagrams from the percolation model.
  std::vector<KnotCode> codes;
  RunConfig config;
  config.size = size;
  config.shake_rounds = 0;
  for (int k = 0; k < random_codes; ++k) codes.push_back(run_sample_detail(config, static_cast<std::uint64_t>(k)).raw_code);

  out.push_back(check("move invariance on random diagrams", [&] {
    for (std::size_t k = 0; k < codes.size(); ++k) {
      KnotCode code = codes[k];
      const auto before = exact_pair(code);
      reduce(code);
      validate(code);
      const auto reduced = exact_pair(code);
      SimplifyConfig cfg;
      cfg.shake_rounds = 5;
      cfg.rng_seed = k;
      simplify(code, cfg);
      validate(code);
      const auto shaken = exact_pair(code);
      if (before != reduced || before != shaken) return "sample " + std::to_string(k) + " changed invariants";
    }
    return std::string();
  }));

  out.push_back(check("float and exact agree", [&] {
    for (std::size_t k = 0; k < codes.size(); ++k) {
      if (codes[k].empty()) continue;
      const InvariantPair v = compute_invariants(codes[k], {true, true});
      const double tol = 1e-6 * static_cast<double>(codes[k].crossing_count());
      if (std::fabs(v.log_abs_minus1 - log_of(*v.exact_minus1)) > tol ||
          std::fabs(v.log_abs_i - 0.5 * log_of(*v.exact_i_norm)) > tol)
        return "sample " + std::to_string(k) + " disagrees";
      if (mpz_even_p(v.exact_minus1->get_mpz_t())) return "sample " + std::to_string(k) + " has even determinant";
    }
    return std::string();
  }));
  return out;
}

}  // namespace knotperc
