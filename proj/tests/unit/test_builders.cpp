#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hochmod/builders.hpp"

using namespace hochmod;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kData = HOCHMOD_TEST_DATA_DIR;

}  // namespace

TEST_CASE("preset catalog") {
  CHECK(preset_names() == std::vector<std::string>{"kZ2", "kZ3", "kS3", "sweedler", "D-kZ2", "D-kZ3", "D-sweedler"});
  Rationals Q;
  CHECK_THROWS_AS(build_preset("kZ7", Q), ParseError);
  PrimeField F2(2);
  CHECK_THROWS_AS(build_preset("sweedler", F2), InvalidField);
  CHECK_THROWS_AS(build_preset("D-sweedler", F2), InvalidField);
}

TEST_CASE("group algebra examples") {
  Rationals Q;
  auto s3 = build_preset("kS3", Q).hopf;
  CHECK(verify_hopf(s3).ok());
  CHECK(center_basis(s3.algebra()).dim() == 3);
  // Over F_2, (g - e)^2 = 0 in F_2[Z/2].
  PrimeField F2(2);
  auto z2 = build_preset("kZ2", F2).hopf;
  const auto& A = z2.algebra();
  Vec<PrimeField> x{F2.neg(F2.one()), F2.one()};
  CHECK(vec_is_zero(F2, A.mul(x, x)));
  CHECK_FALSE(vec_is_zero(F2, x));
}

TEST_CASE("Sweedler relations") {
  PrimeField F3(3);
  auto H = build_preset("sweedler", F3).hopf;
  const auto& A = H.algebra();
  auto s2 = H.antipode_power(2);
  // S^2(x) = -x, S^4 = id, S^2 != id.
  CHECK(s2.apply_dense(A.basis(2)) == vec_scale(F3, A.basis(2), F3.neg(F3.one())));
  CHECK(H.antipode_power(4).is_identity());
  CHECK_FALSE(s2.is_identity());
  CHECK(integral_space(H, IntegralConvention::right).dim() == 1);
}

TEST_CASE("Drinfel'd doubles") {
  Rationals Q;
  for (std::string name : {"D-kZ2", "D-kZ3"}) {
    auto data = build_preset(name, Q);
    const auto& A = data.hopf.algebra();
    CHECK(center_basis(A).dim() == A.dim());
    CHECK(verify_factorizable(data.hopf, *data.R).factorizable);
  }
  auto ds = build_preset("D-sweedler", Q);
  CHECK(ds.hopf.dim() == 16);
  CHECK(verify_hopf(ds.hopf).ok());
  CHECK(verify_quasitriangular(ds.hopf, *ds.R).ok());
  CHECK(verify_factorizable(ds.hopf, *ds.R).rank == 16);
}

TEST_CASE("presentation round trip") {
  Rationals Q;
  PrimeField F5(5);
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    auto raw = raw_from_hopf(build_preset(name, Q));
    auto text = write_presentation(raw);
    auto back = parse_presentation(text, "memory");
    raw.source = "memory";
    CHECK(back == raw);
    CHECK(write_presentation(back) == text);
    auto loaded = load_presentation(back, Q);
    CHECK(raw_from_hopf(loaded.data) == raw_from_hopf(build_preset(name, Q)));
  }
  auto raw5 = raw_from_hopf(build_preset("D-kZ3", F5));
  CHECK(raw5.field == FieldSpec::prime(5));
  CHECK(parse_presentation(write_presentation(raw5), "x").field == FieldSpec::prime(5));
}

TEST_CASE("shipped D(kZ/2) file") {
  Rationals Q;
  auto raw = read_presentation(kData + "/D-kZ2.json");
  auto loaded = load_presentation(raw, Q);
  REQUIRE(loaded.ok());
  REQUIRE(loaded.ribbon);
  auto built = build_preset("D-kZ2", Q);
  auto rd = make_ribbon_data(built.hopf, *built.R);
  CHECK(raw_from_hopf(loaded.data) == raw_from_hopf(built));
  CHECK(loaded.ribbon->v == rd.v);
  CHECK(loaded.ribbon->rho == rd.rho);
  CHECK(loaded.ribbon->omega == rd.omega);
  CHECK(loaded.ribbon->v_source == "solved");
  CHECK(loaded.rho_source == "solved");
  CHECK(loaded.factorizable->rank == 4);
  CHECK(slurp(kData + "/D-kZ2.json") == write_presentation(raw_from_hopf(built)));
}

TEST_CASE("a corrupted multiplication table is reported") {
  Rationals Q;
  auto loaded = load_presentation(read_presentation(kData + "/broken.json"), Q);
  CHECK_FALSE(loaded.ok());
  bool named = false;
  for (const auto& v : loaded.report.violations)
    if (v.check == "associativity" && v.basis.size() == 3) named = true;
  CHECK(named);
}

TEST_CASE("pinned ribbon element") {
  Rationals Q;
  auto built = build_preset("D-kZ3", Q);
  auto rd = make_ribbon_data(built.hopf, *built.R);
  SUBCASE("valid v skips the solver") {
    auto raw = raw_from_hopf(built, rd.v);
    auto loaded = load_presentation(parse_presentation(write_presentation(raw), "pinned"), Q);
    REQUIRE(loaded.ribbon);
    CHECK(loaded.ribbon->v_source == "supplied");
    CHECK(loaded.ribbon->v == rd.v);
    CHECK(loaded.ok());
  }
  SUBCASE("invalid v is rejected") {
    auto bad = built.hopf.algebra().unit();
    bad[1] = Rational(1);
    auto loaded = load_presentation(raw_from_hopf(built, bad), Q);
    CHECK_FALSE(loaded.ribbon);
    CHECK_FALSE(loaded.ok());
    CHECK(loaded.ribbon_error.find("supplied ribbon element fails") != std::string::npos);
  }
  SUBCASE("supplied rho is normalized") {
    auto rho = vec_scale(Q, rd.rho, Rational(7));
    auto loaded = load_presentation(raw_from_hopf(built, std::nullopt, rho), Q);
    REQUIRE(loaded.ribbon);
    CHECK(loaded.rho_source == "supplied");
    CHECK(loaded.ribbon->rho == rd.rho);
  }
  SUBCASE("no R-matrix") {
    auto raw = raw_from_hopf(built);
    raw.R.reset();
    auto loaded = load_presentation(raw, Q);
    CHECK(loaded.ok());
    CHECK(loaded.ribbon_error == "no R-matrix");
    CHECK(loaded.rho);
  }
  SUBCASE("D(Sweedler) has no ribbon element") {
    auto loaded = load_presentation(raw_from_hopf(build_preset("D-sweedler", Q)), Q);
    CHECK(loaded.ok());
    CHECK_FALSE(loaded.ribbon);
    CHECK(loaded.ribbon_error == "no ribbon element exists for this R-matrix");
  }
}

TEST_CASE("parse errors carry locations") {
  auto location = [](const std::string& text) {
    try {
      parse_presentation(text, "f.json");
    } catch (const ParseError& e) {
      return e.location();
    }
    return std::string("no error");
  };
  CHECK(location("{\n \"field\": \"Q\",\n \"dim\": 2,,\n}") == "f.json:line 3, column 11");
  CHECK(location("{\"field\": \"F4\", \"dim\": 1}").find("field") != std::string::npos);
  CHECK(location("{\"field\": \"Q\"}").find("dim") != std::string::npos);
  CHECK(location("[1, 2]").find("root") != std::string::npos);
  CHECK_THROWS_AS(read_presentation(kData + "/missing.json"), ParseError);
  // Out-of-range indices are caught when building.
  Rationals Q;
  auto raw = raw_from_hopf(build_preset("kZ2", Q));
  std::get<0>(raw.mult[0]) = 9;
  CHECK_THROWS_AS(hopf_from_raw(raw, Q), ParseError);
}
