#include <doctest.h>

#include "properties.hpp"

using namespace superflag;

namespace {
void require(const props::Outcome& o) {
  INFO(o.name << ": " << o.cases << " cases, " << o.failures << " failures; " << o.first_failure);
  CHECK(o.cases >= props::kDefaultCases);
  CHECK(o.failures == 0);
}
}  // namespace

TEST_CASE("property: super-Jacobi") { require(props::super_jacobi(props::kDefaultSeed)); }
TEST_CASE("property: Leibniz") { require(props::leibniz(props::kDefaultSeed)); }
TEST_CASE("property: odd partials anticommute") { require(props::odd_partials_anticommute(props::kDefaultSeed)); }
TEST_CASE("property: inverse round-trips") { require(props::inverse_roundtrip(props::kDefaultSeed)); }
TEST_CASE("property: transition cocycle") { require(props::transition_cocycle(props::kDefaultSeed)); }
TEST_CASE("property: pushforward equivariance") { require(props::pushforward_equivariance(props::kDefaultSeed)); }
