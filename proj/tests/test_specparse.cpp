#include <doctest.h>

#include <string>
#include <variant>
#include <vector>

#include "gennum/specparse.hpp"
#include "test_util.hpp"

using namespace gennum;
using namespace gennum::specparse;
using catalog::AbelianSpec;
using catalog::CustomAffineSpec;
using catalog::GroupSpec;
using catalog::MatrixSplitSpec;
using catalog::MaxClass3Spec;
using catalog::ScalarSplitSpec;
using catalog::TorsionScalarSpec;
using padic::ScalarForm;

namespace {

std::string error_message(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const error& e) {
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_CASE("scalar items normalize lambda into the classified form") {
  const auto specs = parse_spec("group scalar { p=3; rank=2; lambda=4; }");
  REQUIRE(specs.size() == 1);
  const auto& s = std::get<ScalarSplitSpec>(specs[0]);
  CHECK(s.p == 3);
  CHECK(s.d == 2);
  CHECK(s.form == ScalarForm{ScalarForm::Plus, 1});
}

TEST_CASE("kinds without parameters parse with empty bodies") {
  const auto specs = parse_spec("group maxclass3 {}");
  REQUIRE(specs.size() == 1);
  CHECK(std::holds_alternative<MaxClass3Spec>(specs[0]));
}

TEST_CASE("multiple items, comments, and flexible whitespace") {
  const std::string text =
      "# two groups\n"
      "group abelian { p=5; rank=3; }\n"
      "group scalar{p=2;rank=2;lambda=-3;}  # minus form\n";
  const auto specs = parse_spec(text);
  REQUIRE(specs.size() == 2);
  CHECK(std::get<AbelianSpec>(specs[0]).d == 3);
  CHECK(std::get<ScalarSplitSpec>(specs[1]).form ==
        ScalarForm{ScalarForm::Plus, 2});
}

TEST_CASE("matrix-valued keys parse nested rows") {
  const auto specs =
      parse_spec("group matrix { p=5; t=[[1,5],[0,1]]; }");
  const auto& s = std::get<MatrixSplitSpec>(specs[0]);
  Mat t(2, 2);
  t << 1, 5, 0, 1;
  CHECK(s.t == t);

  const auto torsion =
      parse_spec("group torsion { p=2; t=[[-1,0],[0,-1]]; }");
  CHECK(std::get<TorsionScalarSpec>(torsion[0]).t == Mat(-Mat::Identity(2, 2)));
}

TEST_CASE("affine items pair action matrices with translations in order") {
  const std::string text =
      "group affine { p=2; dim=2; m=[[0,1],[1,0]]; v=[0,0]; v=[1,0]; v=[0,1]; }";
  const auto specs = parse_spec(text);
  const auto& s = std::get<CustomAffineSpec>(specs[0]);
  CHECK(s.p == 2);
  CHECK(s.dim == 2);
  REQUIRE(s.gens.size() == 3);
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(s.gens[0].first == swap);
  CHECK(s.gens[0].second == Vec::Zero(2));
  CHECK(s.gens[1].first == Mat::Identity(2, 2));
  CHECK(s.gens[1].second == Vec::Unit(2, 0));
  CHECK(s.counter == -1);

  const auto counted = parse_spec(
      "group affine { p=3; dim=2; counter=0; m=[[1,0],[0,4]]; v=[1,0]; }");
  CHECK(std::get<CustomAffineSpec>(counted[0]).counter == 0);
}

TEST_CASE("syntax errors carry positions") {
  SUBCASE("truncated item") {
    const std::string msg = error_message("group scalar { p=2; rank=2; lambda=5; s");
    CHECK(msg.find("SyntaxError") != std::string::npos);
    CHECK(msg.find("1:") != std::string::npos);
  }
  SUBCASE("unknown kind") {
    testutil::expect_error(errc::syntax_error,
                           [] { (void)parse_spec("group ring { p=2; }"); });
  }
  SUBCASE("missing semicolon") {
    testutil::expect_error(errc::syntax_error,
                           [] { (void)parse_spec("group abelian { p=2 rank=1; }"); });
  }
  SUBCASE("ragged matrix rows") {
    testutil::expect_error(errc::syntax_error, [] {
      (void)parse_spec("group matrix { p=3; t=[[1,0],[0]]; }");
    });
  }
  SUBCASE("position is line-accurate") {
    const std::string msg = error_message("group abelian { p=2; rank=1; }\ngroup ??");
    CHECK(msg.find("2:") != std::string::npos);
  }
  SUBCASE("integer literals out of range") {
    testutil::expect_error(errc::syntax_error, [] {
      (void)parse_spec("group abelian { p=2; rank=99999999999999999999; }");
    });
  }
}

TEST_CASE("semantic errors echo the catalog constraints with positions") {
  SUBCASE("composite p") {
    const std::string msg = error_message("group abelian { p=6; rank=2; }");
    CHECK(msg.find("SemanticError") != std::string::npos);
  }
  SUBCASE("scalar lambda outside the unit menu") {
    testutil::expect_error(errc::semantic_error, [] {
      (void)parse_spec("group scalar { p=3; rank=2; lambda=6; }");
    });
  }
  SUBCASE("p=2 scalar with s=1 is rejected") {
    testutil::expect_error(errc::semantic_error, [] {
      (void)parse_spec("group scalar { p=2; rank=2; s=1; sign=1; }");
    });
  }
  SUBCASE("duplicate keys") {
    testutil::expect_error(errc::semantic_error, [] {
      (void)parse_spec("group abelian { p=2; p=3; rank=1; }");
    });
  }
  SUBCASE("unknown keys") {
    testutil::expect_error(errc::semantic_error, [] {
      (void)parse_spec("group abelian { p=2; rank=1; weight=4; }");
    });
  }
  SUBCASE("torsion action of non p-power order") {
    testutil::expect_error(errc::semantic_error, [] {
      (void)parse_spec("group torsion { p=2; t=[[1,1],[0,1]]; }");
    });
  }
}

TEST_CASE("rendered specs parse back to themselves") {
  std::vector<std::string> texts = {
      "group abelian { p=7; rank=2; }",
      "group scalar { p=3; rank=3; lambda=4; }",
      "group scalar { p=2; rank=2; lambda=-5; }",
      "group matrix { p=5; t=[[1,5],[0,1]]; }",
      "group maxclass3 {}",
      "group torsion { p=2; t=[[-1,0],[0,-1]]; }",
      "group affine { p=2; dim=3; m=[[1,0,0],[0,1,0],[0,0,-1]]; v=[1,0,0]; "
      "v=[0,1,0]; v=[0,0,1]; }",
      "group affine { p=3; dim=3; counter=0; m=[[1,0,0],[0,0,-1],[0,1,-1]]; "
      "v=[0,0,0]; m=[[1,0,0],[0,4,0],[0,0,4]]; v=[1,0,0]; v=[0,1,0]; }",
  };
  for (const auto& text : texts) {
    CAPTURE(text);
    const auto first = parse_spec(text);
    REQUIRE(first.size() == 1);
    const std::string rendered = render_spec(first[0]);
    const auto second = parse_spec(rendered);
    REQUIRE(second.size() == 1);
    CHECK(render_spec(second[0]) == rendered);
    CHECK(catalog::describe(second[0]) == catalog::describe(first[0]));
    CHECK(catalog::spec_prime(second[0]) == catalog::spec_prime(first[0]));
    CHECK(catalog::spec_dim(second[0]) == catalog::spec_dim(first[0]));
  }
}
