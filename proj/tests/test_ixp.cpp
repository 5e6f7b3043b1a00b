#include <catch2/catch_amalgamated.hpp>

#include "rov/ixp.hpp"

using namespace rov;

namespace {

const Prefix P1 = *Prefix::parse("45.155.129.0/24");

MeasuredPath ixp_path(std::vector<Hop> hops, Verdict v) {
  MeasuredPath p;
  p.plane = Plane::Data;
  p.prefix = P1;
  p.hops = std::move(hops);
  p.verdict = v;
  return p;
}

}  // namespace

TEST_CASE("peering extraction") {
  SECTION("member pair around a lan hop") {
    auto p = ixp_path({Hop::as(1), Hop::ixp(42), Hop::as(2), Hop::as(10)},
                      Verdict::Valid);
    auto m = extract_peerings({p});
    REQUIRE(m.size() == 1);
    const IxpPeering& peering = m.begin()->second;
    CHECK(peering.ixp_id == 42);
    CHECK(peering.asn_left == 1);
    CHECK(peering.asn_right == 2);
    CHECK(peering.valid_paths == 1);
  }
  SECTION("consecutive lan hops of one ixp collapse") {
    auto p = ixp_path({Hop::as(1), Hop::ixp(42), Hop::ixp(42), Hop::as(2)},
                      Verdict::Invalid);
    auto m = extract_peerings({p});
    REQUIRE(m.size() == 1);
    CHECK(m.begin()->second.invalid_paths == 1);
  }
  SECTION("unknown-verdict paths contribute nothing") {
    auto p = ixp_path({Hop::as(1), Hop::ixp(42), Hop::as(2)}, Verdict::Unknown);
    CHECK(extract_peerings({p}).empty());
  }
  SECTION("ixp hop at a path end is discarded") {
    auto p = ixp_path({Hop::as(1), Hop::ixp(42)}, Verdict::Valid);
    CHECK(extract_peerings({p}).empty());
    auto q = ixp_path({Hop::ixp(42), Hop::as(1)}, Verdict::Valid);
    CHECK(extract_peerings({q}).empty());
  }
  SECTION("a none hop next to the lan breaks attribution") {
    auto p = ixp_path({Hop::as(1), Hop::ixp(42), Hop::none(), Hop::as(2)},
                      Verdict::Valid);
    CHECK(extract_peerings({p}).empty());
  }
  SECTION("unordered pair: direction does not matter") {
    auto p = ixp_path({Hop::as(2), Hop::ixp(42), Hop::as(1)}, Verdict::Valid);
    auto q = ixp_path({Hop::as(1), Hop::ixp(42), Hop::as(2)}, Verdict::Valid);
    auto m = extract_peerings({p, q});
    REQUIRE(m.size() == 1);
    CHECK(m.begin()->second.valid_paths == 2);
  }
}

TEST_CASE("peering kind inference") {
  // a peering is called routeserver exactly when no invalid path crossed it
  auto clean = ixp_path({Hop::as(1), Hop::ixp(7), Hop::as(2)}, Verdict::Valid);
  auto dirty = ixp_path({Hop::as(3), Hop::ixp(7), Hop::as(4)}, Verdict::Invalid);
  auto m = extract_peerings({clean, dirty});
  REQUIRE(m.size() == 2);
  CHECK(m.at({7, 1, 2}).inferred_kind() == IxpSessionKind::Routeserver);
  CHECK(m.at({7, 3, 4}).inferred_kind() == IxpSessionKind::Direct);
}

TEST_CASE("ixp report and path ratio") {
  // 2 direct peerings with 6 paths each, 3 routeserver peerings with 3 valid
  // paths each -> direct/routeserver path ratio 6/3 = 2, and with one
  // invalid path per direct peering the direct mean is 6.
  std::vector<MeasuredPath> paths;
  for (int pair = 0; pair < 2; ++pair) {
    Asn left = 100 + pair * 2, right = 101 + pair * 2;
    for (int k = 0; k < 5; ++k)
      paths.push_back(ixp_path({Hop::as(left), Hop::ixp(9), Hop::as(right)},
                               Verdict::Valid));
    paths.push_back(
        ixp_path({Hop::as(left), Hop::ixp(9), Hop::as(right)}, Verdict::Invalid));
  }
  for (int pair = 0; pair < 3; ++pair) {
    Asn left = 200 + pair * 2, right = 201 + pair * 2;
    for (int k = 0; k < 3; ++k)
      paths.push_back(ixp_path({Hop::as(left), Hop::ixp(9), Hop::as(right)},
                               Verdict::Valid));
  }
  auto reports = ixp_report(extract_peerings(paths));
  REQUIRE(reports.size() == 1);
  const IxpReport& r = reports[0];
  CHECK(r.ixp_id == 9);
  CHECK(r.direct_peerings == 2);
  CHECK(r.routeserver_peerings == 3);
  CHECK(r.total_paths == 21);
  CHECK(r.invalid_paths == 2);
  CHECK(r.invalid_fraction == Catch::Approx(2.0 / 21));
  REQUIRE(r.avg_paths_direct.has_value());
  REQUIRE(r.avg_paths_routeserver.has_value());
  CHECK(*r.avg_paths_direct == Catch::Approx(6.0));
  CHECK(*r.avg_paths_routeserver == Catch::Approx(3.0));
  CHECK(*r.direct_to_routeserver_ratio == Catch::Approx(2.0));

  auto ratios = ratio_summary(reports);
  REQUIRE(ratios.pooled.has_value());
  CHECK(*ratios.pooled == Catch::Approx(2.0));
  CHECK(*ratios.mean_of_ixps == Catch::Approx(2.0));
}

TEST_CASE("per-ixp separation") {
  auto a = ixp_path({Hop::as(1), Hop::ixp(7), Hop::as(2)}, Verdict::Valid);
  auto b = ixp_path({Hop::as(1), Hop::ixp(8), Hop::as(2)}, Verdict::Invalid);
  auto m = extract_peerings({a, b});
  REQUIRE(m.size() == 2);  // same pair, two fabrics
  auto reports = ixp_report(m);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].ixp_id == 7);
  CHECK(reports[0].invalid_paths == 0);
  CHECK(reports[1].ixp_id == 8);
  CHECK(reports[1].invalid_paths == 1);
}
