#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "signrank/fixtures.hpp"
#include "signrank/io.hpp"

using namespace signrank;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json cli_json(std::vector<std::string> args, int expected = kOk) {
  args.insert(args.begin(), "--json");
  const Run r = cli(args);
  REQUIRE_MESSAGE(r.code == expected, r.err);
  return nlohmann::json::parse(r.out);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("signrank_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("fixture data") {
  const SignPattern a0 = fixture_pattern("A0");
  CHECK(a0.rows() == 9);
  CHECK(a0.cols() == 9);
  CHECK(std::string(a0.to_string()).substr(30, 9) == "++0++++00");
  CHECK(a0.zero_count() == 28);
  CHECK(is_condensed(a0));
  CHECK(fixture_pattern("A1")(2, 1) == Sign::Zero);
  const Configuration perles = fixture_config("perles_config");
  CHECK(perles.points.size() == 9);
  CHECK(perles.hyperplanes.size() == 9);
  CHECK(perles.field_d == 5);
  CHECK(fixture("A0").provenance == Provenance::Transcribed);
  CHECK(fixture("perles_config").provenance == Provenance::Derived);
  CHECK_THROWS_AS(fixture("nope"), NotFound);
  CHECK_THROWS_AS(fixture_config("A0"), NotFound);
  CHECK(fixture_names().size() == 6);
}

TEST_CASE("perles configuration re-verifies exactly") {
  const PerlesReport rep = derive_perles_check();
  CHECK(rep.points == 9);
  CHECK(rep.lines == 9);
  CHECK(rep.zero_count == 28);
  CHECK(rep.points_per_line[0] == 4);
  CHECK(rep.zero_set_matches);
  CHECK(rep.equals_a0);
  CHECK(apply_equivalence(encode_configuration(fixture_config("perles_config")), rep.witness) ==
        fixture_pattern("A0"));
  // independent incidence count straight from the coordinates
  const Configuration c = fixture_config("perles_config");
  std::size_t on = 0;
  for (const auto& p : c.points) on += side(p, c.hyperplanes[0]) == Sign::Zero;
  CHECK(on == 4);
}

TEST_CASE("pattern text format") {
  const SignPattern a = parse_pattern("# comment\n+ - 0\n\n0-+\n");
  CHECK(a == SignPattern::from_rows({"+-0", "0-+"}));
  CHECK(parse_pattern(format_pattern(a, "x")) == a);
  try {
    parse_pattern("++\n+x\n");
    FAIL("accepted bad character");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 2);
  }
  CHECK_THROWS_AS(parse_pattern("++\n+\n"), ParseError);
}

TEST_CASE("configuration, realization and certificate files round-trip") {
  for (const char* name : {"fig21_config", "perles_config"}) {
    const Configuration c = fixture_config(name);
    const Configuration back = parse_configuration(format_configuration(c));
    CHECK(back.field_d == c.field_d);
    CHECK(encode_configuration(back) == encode_configuration(c));
    CHECK(format_configuration(back) == format_configuration(c));
  }
  const Configuration q = parse_configuration(
      R"({"dim": 2, "sqrt": 5, "points": [[{"r": "1/2", "s": "1/2"}, 2]], "hyperplanes": [["0", -1, 1]]})");
  CHECK(q.points[0].coords[0] == QuadElem(Rational(1, 2), Rational(1, 2), 5));

  const SignPattern fig = fixture_pattern("fig21_pattern");
  const auto real = search_realization(fig, 3);
  REQUIRE(real);
  const Realization rb = parse_realization(format_realization(*real));
  CHECK(rb.U == real->U);
  CHECK(rb.V == real->V);
  CHECK(rb.row_signs == real->row_signs);
  CHECK(rb.col_signs == real->col_signs);

  const RationalCertificate cert = rationalize(fig, *real);
  const RationalCertificate cb = parse_certificate(format_certificate(cert));
  CHECK(cb.matrix == cert.matrix);
  CHECK(cb.rank == cert.rank);
  CHECK(cb.target == cert.target);

  try {
    parse_configuration("{\"dim\": 2,\n \"points\": [[1, 2]\n");
    FAIL("accepted truncated JSON");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 2);
  }
}

TEST_CASE("svg rendering") {
  const std::string svg = render_svg(fixture_config("fig21_config"));
  CHECK(svg.find("<svg") != std::string::npos);
  std::size_t circles = 0;
  for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
  CHECK(circles == 3);
  CHECK(svg.find("l3") != std::string::npos);
}

TEST_CASE("cli: fixtures, selfcheck, condense") {
  TempDir dir;
  CHECK(cli({"fixtures", "--export", dir.path.string()}).code == kOk);
  for (const auto& name : fixture_names()) {
    const bool pattern = fs::exists(dir / (name + ".pat"));
    CHECK((pattern || fs::exists(dir / (name + ".json"))));
  }
  CHECK(parse_pattern(read_file(dir / "A0.pat")) == fixture_pattern("A0"));
  CHECK(cli({"selfcheck"}).code == kOk);

  write_file(dir / "pp.pat", "++\n++\n");
  const auto j = cli_json({"condense", dir / "pp.pat", "-o", dir / "pc.pat"});
  CHECK(j["rows"] == 1);
  CHECK(j["pattern"][0] == "+");
  CHECK(parse_pattern(read_file(dir / "pc.pat")) == SignPattern::from_rows({"+"}));
  const Run text = cli({"condense", dir / "pp.pat"});
  CHECK(text.out.find("1x1") != std::string::npos);
}

TEST_CASE("cli: mr, mr2, equiv") {
  TempDir dir;
  cli({"fixtures", "--export", dir.path.string()});
  const Run mr = cli({"mr", dir / "A0.pat", "--try-rank", "3"});
  CHECK(mr.code == kOk);
  CHECK(mr.out.rfind("mr = 3 (lower: SNS 3x3 at rows", 0) == 0);
  const auto j = cli_json({"mr", dir / "A0.pat"});
  CHECK(j["lower"] == 3);
  CHECK(j["upper"] == 3);

  CHECK(cli_json({"mr2", dir / "A1.pat"})["mr2"] == true);
  const auto no = cli_json({"mr2", dir / "A0.pat"}, kNegative);
  CHECK(no["failed_condition"] == 2);
  CHECK(cli({"mr2", dir / "A1.pat", "--limit", "1"}).code == kExhausted);

  write_file(dir / "neg.pat", format_pattern(fixture_pattern("A0").negated()));
  const auto eq = cli_json({"equiv", dir / "A0.pat", dir / "neg.pat"});
  CHECK(eq["equivalent"] == true);
  CHECK(cli({"equiv", dir / "A1.pat", dir / "A2.pat"}).code == kOk);
  CHECK(cli({"equiv", dir / "A1.pat", dir / "fig21_pattern.pat"}).code == kNegative);
}

TEST_CASE("cli: realize is reproducible, rationalize writes verified files") {
  TempDir dir;
  cli({"fixtures", "--export", dir.path.string()});
  REQUIRE(cli({"realize", dir / "fig21_pattern.pat", "--rank", "3", "--seed", "5", "-o", dir / "r1.json"}).code == kOk);
  REQUIRE(cli({"--threads", "1", "realize", dir / "fig21_pattern.pat", "--rank", "3", "--seed", "5", "-o",
               dir / "r2.json"})
              .code == kOk);
  CHECK(read_file(dir / "r1.json") == read_file(dir / "r2.json"));

  const Run rat = cli({"rationalize", dir / "fig21_pattern.pat", "--from", dir / "r1.json", "-o", dir / "c.json"});
  REQUIRE(rat.code == kOk);
  const RationalCertificate cert = parse_certificate(read_file(dir / "c.json"));
  CHECK(verify_certificate(cert));
  CHECK(cert.target == fixture_pattern("fig21_pattern"));
  CHECK(oracle::rank(cert.matrix) <= 3);

  REQUIRE(cli({"realize", dir / "A0.pat", "--rank", "3", "-o", dir / "a0.json"}).code == kOk);
  const Run refused = cli({"rationalize", dir / "A0.pat", "--from", dir / "a0.json", "-o", dir / "a0c.json"});
  CHECK(refused.code == kNegative);
  CHECK(refused.out.find("Overdetermined: column 1 has 4 zeros > r-1 = 2") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "a0c.json"));

  write_file(dir / "diag.pat", "+0\n0+\n");
  CHECK(cli({"realize", dir / "diag.pat", "--rank", "1", "--restarts", "4"}).code == kNegative);
}

TEST_CASE("cli: geometry commands") {
  TempDir dir;
  cli({"fixtures", "--export", dir.path.string()});
  REQUIRE(cli({"encode", dir / "fig21_config.json", "-o", dir / "fig.pat"}).code == kOk);
  CHECK(parse_pattern(read_file(dir / "fig.pat")) == fixture_pattern("fig21_pattern"));

  REQUIRE(cli({"compose", dir / "fig21_config.json", dir / "fig21_config.json", "-o", dir / "st.json"}).code == kOk);
  const SignPattern s = encode_configuration(parse_configuration(read_file(dir / "st.json")));
  CHECK(s.rows() == 6);

  write_file(dir / "small.json", R"({"dim": 2, "points": [[1, 2], [-1, 3]], "hyperplanes": [[-1, 1, 1]]})");
  REQUIRE(cli({"dual", dir / "small.json", "-o", dir / "dual.json"}).code == kOk);
  CHECK(parse_configuration(read_file(dir / "dual.json")).hyperplanes.size() == 2);

  REQUIRE(cli({"render", dir / "perles_config.json", "-o", dir / "p.svg", "--bbox", "-3,-3,3,3"}).code == kOk);
  CHECK(read_file(dir / "p.svg").find("</svg>") != std::string::npos);
}

TEST_CASE("cli: input errors") {
  TempDir dir;
  write_file(dir / "bad.pat", "++\n+x\n");
  const Run bad = cli({"condense", dir / "bad.pat"});
  CHECK(bad.code == kInputError);
  CHECK(bad.err.find("line 2, column 2") != std::string::npos);
  CHECK(cli({"condense", dir / "missing.pat"}).code == kInputError);
  CHECK(cli({"nosuchcommand"}).code == kInputError);
  CHECK(cli({"realize", dir / "bad.pat"}).code == kInputError);
  write_file(dir / "vert.json", R"({"dim": 2, "points": [[0, 1]], "hyperplanes": [[0, 1, 0]]})");
  CHECK(cli({"encode", dir / "vert.json"}).code == kInputError);
}
