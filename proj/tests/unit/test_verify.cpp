#include <catch_amalgamated.hpp>

#include <cmath>

#include "landau_dirac/verify.hpp"

using namespace landau_dirac;
using namespace landau_dirac::verify;

namespace {

const CheckResult* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("quick suite passes for charged and neutral defaults") {
  for (int z : {1, -1, 0}) {
    const Report r = run_verify(make_config(1.0, 0.2, z, 1.79), {});
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
    CHECK(r.passed());
    CHECK((find(r, "first_order_system") != nullptr) == (z != 0));
    CHECK(find(r, "neutral_spectrum") != nullptr);
  }
}

TEST_CASE("injected coefficient error fails the residual checks by name") {
  VerifyOptions o;
  o.fault = Fault::coefficient;
  const Report r = run_verify(make_config(1.0, 0.2, 1, 1.79), o);
  CHECK(!r.passed());
  for (const char* name : {"first_order_system", "hamiltonian_pointwise", "normalization"}) {
    INFO(name);
    REQUIRE(find(r, name));
    CHECK(!find(r, name)->passed);
  }
  CHECK(find(r, "vanishing_census")->passed);
}

TEST_CASE("injected vanishing flag fails the census") {
  VerifyOptions o;
  o.fault = Fault::vanishing;
  const Report r = run_verify(make_config(1.0, 0.2, -1, 1.0), o);
  CHECK(!find(r, "vanishing_census")->passed);
  CHECK(find(r, "first_order_system")->passed);
}

TEST_CASE("every non-census state at n_rho = 0 is caught when flagged as zero") {
  for (int z : {1, -1}) {
    const FieldConfig cfg = make_config(1.0, 0.2, z, 1.79);
    const StateRanges r = census_ranges(3);
    const StateEnumeration clean = enumerate_states(cfg, r);
    CHECK(census_mismatches(clean, cfg, r) == 0);
    std::size_t tried = 0;
    for (std::size_t i = 0; i < clean.states.size(); ++i) {
      if (clean.states[i].qn.n_rho != 0) continue;
      StateEnumeration bad = clean;
      bad.vanishing.push_back(bad.states[i].qn);
      bad.states.erase(bad.states.begin() + static_cast<std::ptrdiff_t>(i));
      CHECK(census_mismatches(bad, cfg, r) > 0);
      ++tried;
    }
    CHECK(tried > 0);
    // and un-flagging a true zero state is caught too
    StateEnumeration missing = clean;
    missing.vanishing.pop_back();
    CHECK(census_mismatches(missing, cfg, r) > 0);
  }
}

TEST_CASE("suite rejects bad options") {
  VerifyOptions o;
  o.level = "thorough";
  CHECK_THROWS_AS(run_verify(make_config(1.0, 0.2, 1, 0.0), o), landau_dirac::error);
  CHECK_THROWS_AS(run_verify(make_config(1.0, 0.0, 1, 0.0), {}), landau_dirac::error);
  CHECK_THROWS_AS(parse_fault("everything"), landau_dirac::error);
  CHECK(parse_fault("") == Fault::none);
}

TEST_CASE("log-log slope") {
  CHECK(verify::detail::log_slope({1e-2, 1e-3, 1e-4}, {3e-4, 3e-6, 3e-8}) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("erratum diagnostic covers every branch") {
  const ErratumSummary s = erratum_table({1, -1}, {1.0}, 0.2, 2, 2, {0.0, 0.3});
  CHECK(s.by_branch.size() == 16);
  CHECK(check_erratum(s).passed);
  for (const auto& e : s.entries) CHECK(!e.status.empty());
  // the sigma=- Z>0 m>=0 lowest level is a printed zero and the solver agrees
  CHECK(s.by_branch.at("(-,Z>0,m>=0,n=0)").count("zero-match") == 1);
}

TEST_CASE("full suite on a small grid") {
  VerifyOptions o;
  o.level = "full";
  o.grid_points = 64;
  const Report r = run_verify(make_config(1.0, 0.3, 1, 1.0), o);
  for (const char* name : {"eigen_levels", "tau_shrink", "grid_residual_order", "targeted_levels",
                           "pauli_splitting_oracle", "degeneracy_growth"}) {
    INFO(name << ": " << (find(r, name) ? find(r, name)->detail : "missing"));
    REQUIRE(find(r, name));
    CHECK(find(r, name)->passed);
  }
}
