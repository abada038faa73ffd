#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "signrank/bounds.hpp"
#include "signrank/fixtures.hpp"
#include "signrank/geometry.hpp"
#include "signrank/io.hpp"
#include "signrank/pattern.hpp"
#include "signrank/realize.hpp"

namespace signrank {

namespace {

using nlohmann::json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;

  void emit(const json& j) const { out << j.dump(1) << "\n"; }
};

json one_based(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (std::size_t x : v) a.push_back(x + 1);
  return a;
}

std::string list_one_based(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s;
}

std::string sign_string(const std::vector<Sign>& v) {
  std::string s;
  for (Sign x : v) s += to_char(x);
  return s;
}

json pattern_rows(const SignPattern& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::string r;
    for (Sign s : a.row(i)) r += to_char(s);
    rows.push_back(r);
  }
  return rows;
}

SignPattern load_pattern(const std::string& path) { return parse_pattern(read_file(path)); }
Configuration load_config(const std::string& path) { return parse_configuration(read_file(path)); }

void write_or_print(const Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    ctx.out << text;
  else
    write_file(path, text);
}

const char* kind_name(DeletionKind k) {
  switch (k) {
    case DeletionKind::Zero:
      return "zero";
    case DeletionKind::Duplicate:
      return "duplicate";
    case DeletionKind::Opposite:
      return "opposite";
  }
  return "?";
}

int cmd_condense(const Context& ctx, const std::string& in, const std::string& out_path) {
  const SignPattern a = load_pattern(in);
  const CondensationReport rep = condense(a);
  if (!out_path.empty()) write_file(out_path, format_pattern(rep.condensed));
  if (ctx.as_json) {
    json log = json::array();
    for (const auto& ev : rep.log) {
      json e{{"axis", ev.axis == Axis::Row ? "row" : "column"}, {"kind", kind_name(ev.kind)}, {"removed", ev.removed + 1}};
      if (ev.kind != DeletionKind::Zero) e["survivor"] = ev.survivor + 1;
      log.push_back(std::move(e));
    }
    ctx.emit({{"rows", rep.condensed.rows()},
              {"cols", rep.condensed.cols()},
              {"pattern", pattern_rows(rep.condensed)},
              {"kept_rows", one_based(rep.kept_rows)},
              {"kept_cols", one_based(rep.kept_cols)},
              {"log", log}});
    return kOk;
  }
  ctx.out << rep.condensed.rows() << "x" << rep.condensed.cols() << " condensed pattern\n";
  ctx.out << format_pattern(rep.condensed);
  ctx.out << "kept rows: " << list_one_based(rep.kept_rows) << "\n";
  ctx.out << "kept cols: " << list_one_based(rep.kept_cols) << "\n";
  for (const auto& ev : rep.log) {
    ctx.out << (ev.axis == Axis::Row ? "row " : "column ") << ev.removed + 1 << " deleted (" << kind_name(ev.kind);
    if (ev.kind != DeletionKind::Zero) ctx.out << " of " << ev.survivor + 1;
    ctx.out << ")\n";
  }
  return kOk;
}

int cmd_mr(const Context& ctx, const std::string& in, const MrBoundsOptions& opt) {
  const SignPattern a = load_pattern(in);
  const MrBounds b = mr_bounds(a, opt);
  if (ctx.as_json) {
    json j{{"lower", b.lower},
           {"upper", b.upper},
           {"exact", b.exact()},
           {"lower_evidence", b.lower_evidence},
           {"upper_evidence", b.upper_evidence}};
    if (b.sns && b.sns->size > 0)
      j["sns"] = {{"size", b.sns->size}, {"rows", one_based(b.sns->rows)}, {"cols", one_based(b.sns->cols)}};
    ctx.emit(j);
  } else {
    if (b.exact())
      ctx.out << "mr = " << b.lower;
    else
      ctx.out << b.lower << " <= mr <= " << b.upper;
    ctx.out << " (lower: " << b.lower_evidence.front() << "; upper: " << b.upper_evidence.front() << ")\n";
  }
  return b.exact() ? kOk : kNegative;
}

int cmd_mr2(const Context& ctx, const std::string& in, std::size_t limit) {
  const SignPattern a = load_pattern(in);
  Mr2Options opt;
  opt.search_limit = limit;
  const Mr2Result r = is_mr2(a, opt);
  static const char* reasons[] = {"", "condensed pattern has fewer than 2 rows or columns",
                                  "a line of the condensed pattern has more than one zero",
                                  "no signatures and permutations make all lines nondecreasing"};
  if (ctx.as_json) {
    json j{{"mr2", r.value}};
    if (!r.value) j["failed_condition"] = r.failed_condition;
    if (r.witness) {
      const auto& w = *r.witness;
      j["row_signs"] = sign_string(w.row_signs);
      j["col_signs"] = sign_string(w.col_signs);
      j["row_order"] = one_based(w.row_order);
      j["col_order"] = one_based(w.col_order);
      j["kept_rows"] = one_based(w.condensation.kept_rows);
      j["kept_cols"] = one_based(w.condensation.kept_cols);
      j["arranged"] = pattern_rows(w.arranged);
    }
    ctx.emit(j);
  } else if (r.value) {
    const auto& w = *r.witness;
    ctx.out << "mr = 2\n";
    ctx.out << "condensed rows " << list_one_based(w.condensation.kept_rows) << ", cols "
            << list_one_based(w.condensation.kept_cols) << "\n";
    ctx.out << "row signs " << sign_string(w.row_signs) << ", col signs " << sign_string(w.col_signs) << "\n";
    ctx.out << "row order " << list_one_based(w.row_order) << ", col order " << list_one_based(w.col_order) << "\n";
    ctx.out << format_pattern(w.arranged);
  } else {
    ctx.out << "mr != 2: condition " << r.failed_condition << " fails (" << reasons[r.failed_condition] << ")\n";
  }
  return r.value ? kOk : kNegative;
}

int cmd_encode(const Context& ctx, const std::string& in, const std::string& out_path) {
  const SignPattern a = encode_configuration(load_config(in));
  write_or_print(ctx, out_path, format_pattern(a));
  if (ctx.as_json) ctx.emit({{"rows", a.rows()}, {"cols", a.cols()}, {"pattern", pattern_rows(a)}});
  return kOk;
}

int cmd_realize(const Context& ctx, const std::string& in, std::size_t rank, const SearchParams& params,
                const std::string& out_path) {
  const SignPattern a = load_pattern(in);
  const auto real = search_realization(a, rank, params);
  if (!real) {
    if (ctx.as_json)
      ctx.emit({{"found", false}, {"rank", rank}});
    else
      ctx.out << "no rank-" << rank << " realization found in " << params.restarts
              << " restarts (inconclusive; this is not evidence that mr > " << rank << ")\n";
    return kNegative;
  }
  write_or_print(ctx, out_path, format_realization(*real));
  if (ctx.as_json)
    ctx.emit({{"found", true}, {"rank", rank}, {"margin", real->margin}});
  else if (!out_path.empty())
    ctx.out << "rank-" << rank << " realization written to " << out_path << " (margin " << real->margin << ")\n";
  return kOk;
}

int cmd_rationalize(const Context& ctx, const std::string& in, const std::string& from, const std::string& out_path,
                    bool by_rows) {
  const SignPattern a = load_pattern(in);
  const Realization real = parse_realization(read_file(from));
  RationalCertificate cert;
  try {
    cert = by_rows ? rationalize_by_rows(a, real) : rationalize(a, real);
  } catch (const Overdetermined& e) {
    if (ctx.as_json)
      ctx.emit({{"certified", false}, {"reason", "overdetermined"}, {"line", e.column() + 1}, {"zeros", e.zeros()},
                {"limit", e.limit()}, {"message", e.what()}});
    else
      ctx.out << e.what() << "\n";
    return kNegative;
  } catch (const PrecisionExhausted& e) {
    if (ctx.as_json)
      ctx.emit({{"certified", false}, {"reason", "precision"}, {"message", e.what()}});
    else
      ctx.out << e.what() << "\n";
    return kNegative;
  }
  // re-check what will actually be written
  const std::string text = format_certificate(cert);
  const RationalCertificate reread = parse_certificate(text);
  if (!verify_certificate(reread) || reread.target != a || reread.rank > real.rank)
    throw std::logic_error("certificate failed re-verification; nothing written");
  write_or_print(ctx, out_path, text);
  if (ctx.as_json)
    ctx.emit({{"certified", true}, {"rank", cert.rank}});
  else if (!out_path.empty())
    ctx.out << "verified rational certificate of rank " << cert.rank << " written to " << out_path << "\n";
  return kOk;
}

int cmd_compose(const Context& ctx, const std::string& c1, const std::string& c2, const std::string& out_path) {
  const Configuration c = stack(load_config(c1), load_config(c2));
  write_or_print(ctx, out_path, format_configuration(c));
  if (ctx.as_json) ctx.emit({{"points", c.points.size()}, {"hyperplanes", c.hyperplanes.size()}, {"dim", c.dim}});
  return kOk;
}

int cmd_dual(const Context& ctx, const std::string& in, const std::string& out_path) {
  const DualResult d = dualize(load_config(in));
  write_or_print(ctx, out_path, format_configuration(d.config));
  if (ctx.as_json)
    ctx.emit({{"line_flips", sign_string(d.line_flips)}});
  else if (!out_path.empty())
    ctx.out << "dual written to " << out_path << "; orientation flips " << sign_string(d.line_flips) << "\n";
  return kOk;
}

int cmd_equiv(const Context& ctx, const std::string& pa, const std::string& pb, std::uint64_t budget) {
  const SignPattern a = load_pattern(pa), b = load_pattern(pb);
  EquivalenceOptions opt;
  opt.node_budget = budget;
  const auto w = is_equivalent(a, b, opt);
  if (ctx.as_json) {
    json j{{"equivalent", w.has_value()}};
    if (w) {
      j["row_perm"] = one_based(w->row_perm);
      j["col_perm"] = one_based(w->col_perm);
      j["row_signs"] = sign_string(w->row_signs);
      j["col_signs"] = sign_string(w->col_signs);
    }
    ctx.emit(j);
  } else if (w) {
    ctx.out << "equivalent: B(i,j) = r_i c_j A(P(i), Q(j))\n";
    ctx.out << "P = " << list_one_based(w->row_perm) << ", Q = " << list_one_based(w->col_perm) << "\n";
    ctx.out << "r = " << sign_string(w->row_signs) << ", c = " << sign_string(w->col_signs) << "\n";
  } else {
    ctx.out << "not equivalent\n";
  }
  return w ? kOk : kNegative;
}

int cmd_render(const Context& ctx, const std::string& in, const std::string& out_path, const std::string& bbox_text) {
  std::optional<BoundingBox> box;
  if (!bbox_text.empty()) {
    BoundingBox b{};
    std::istringstream s(bbox_text);
    char comma = ',';
    if (!(s >> b[0] >> comma >> b[1] >> comma >> b[2] >> comma >> b[3]))
      throw ParseError("--bbox expects x0,y0,x1,y1", 0, 0);
    box = b;
  }
  write_or_print(ctx, out_path, render_svg(load_config(in), box));
  return kOk;
}

int cmd_fixtures(const Context& ctx, const std::string& dir) {
  std::filesystem::create_directories(dir);
  json written = json::array();
  for (const auto& name : fixture_names()) {
    const Fixture f = fixture(name);
    std::string path;
    if (const auto* p = std::get_if<SignPattern>(&f.payload)) {
      path = (std::filesystem::path(dir) / (name + ".pat")).string();
      write_file(path, format_pattern(*p, name + ": " + f.note));
    } else {
      path = (std::filesystem::path(dir) / (name + ".json")).string();
      write_file(path, format_configuration(std::get<Configuration>(f.payload)));
    }
    written.push_back(path);
    if (!ctx.as_json) ctx.out << path << "\n";
  }
  if (ctx.as_json) ctx.emit({{"written", written}});
  return kOk;
}

int cmd_selfcheck(const Context& ctx) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    all = all && ok;
    checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
    if (!ctx.as_json) ctx.out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  };
  try {
    const PerlesReport rep = derive_perles_check();
    record("perles_config", true,
           "9 points, 9 lines, " + std::to_string(rep.zero_count) + " incidences, " +
               (rep.equals_a0 ? "equal to A0" : "equivalent to A0"));
  } catch (const FixtureCorrupt& e) {
    record("perles_config", false, e.what());
  }
  const SignPattern fig = fixture_pattern("fig21_pattern");
  record("fig21_config", encode_configuration(fixture_config("fig21_config")) == fig,
         "encodes to the 3 x 3 pattern with incidences p2, p3 on l2, l3");
  const SignPattern a0 = fixture_pattern("A0");
  const std::vector<std::size_t> rows{3, 4, 5}, cols{6, 7, 8};
  record("A0", is_condensed(a0) && is_sns(a0.submatrix(rows, cols)),
         "condensed, rows 4,5,6 x cols 7,8,9 sign nonsingular");
  record("A1/A2", is_mr2(fixture_pattern("A1")).value && is_mr2(fixture_pattern("A2")).value, "both have mr = 2");
  if (ctx.as_json) ctx.emit({{"ok", all}, {"checks", checks}});
  return all ? kOk : kNegative;
}

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("SIGNRANK_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds, certificates and drawings for sign-pattern minimum rank", "signrank"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  int threads = 0;
  app.add_flag("--json", json_out, "Machine-readable output");
  app.add_option("--threads", threads, "Worker threads (default: SIGNRANK_THREADS or all cores)");

  std::string in, in2, out_path, from, bbox, dir;
  std::size_t rank = 0, limit = 24;
  bool by_rows = false, direct = false, no_search = false;
  std::uint64_t budget = EquivalenceOptions{}.node_budget;
  MrBoundsOptions mr_opt;
  SearchParams search;

  auto* condense_cmd = app.add_subcommand("condense", "Condense a pattern");
  condense_cmd->add_option("pattern", in, "Input .pat file")->required();
  condense_cmd->add_option("-o,--output", out_path, "Write the condensed pattern here");

  auto* mr_cmd = app.add_subcommand("mr", "Bounds on the minimum rank");
  mr_cmd->add_option("pattern", in)->required();
  mr_cmd->add_option("--sns-cap", mr_opt.sns_cap, "Largest SNS block searched")->check(CLI::Range(0, 8));
  mr_cmd->add_option("--try-rank", mr_opt.try_ranks, "Rank(s) to search realizations at");
  mr_cmd->add_option("--seed", mr_opt.search.seed);
  mr_cmd->add_option("--restarts", mr_opt.search.restarts);
  mr_cmd->add_flag("--no-search", no_search, "Skip realization searches");

  auto* mr2_cmd = app.add_subcommand("mr2", "Decide mr = 2 exactly");
  mr2_cmd->add_option("pattern", in)->required();
  mr2_cmd->add_option("--limit", limit, "Largest condensed side searched over signatures");

  auto* encode_cmd = app.add_subcommand("encode", "Sign pattern of a configuration");
  encode_cmd->add_option("config", in)->required();
  encode_cmd->add_option("-o,--output", out_path);

  auto* realize_cmd = app.add_subcommand("realize", "Search a numerical rank-r realization");
  realize_cmd->add_option("pattern", in)->required();
  realize_cmd->add_option("--rank", rank)->required()->check(CLI::PositiveNumber);
  realize_cmd->add_option("--seed", search.seed);
  realize_cmd->add_option("--restarts", search.restarts);
  realize_cmd->add_option("--iters", search.iters);
  realize_cmd->add_flag("--direct", direct, "Identity signatures only");
  realize_cmd->add_option("-o,--output", out_path);

  auto* rat_cmd = app.add_subcommand("rationalize", "Exact rational certificate from a realization");
  rat_cmd->add_option("pattern", in)->required();
  rat_cmd->add_option("--from", from, "Realization file")->required();
  rat_cmd->add_option("-o,--output", out_path);
  rat_cmd->add_flag("--by-rows", by_rows, "Apply the zero limit to rows instead of columns");

  auto* compose_cmd = app.add_subcommand("compose", "Stack C1 above C2");
  compose_cmd->add_option("c1", in)->required();
  compose_cmd->add_option("c2", in2)->required();
  compose_cmd->add_option("-o,--output", out_path);

  auto* dual_cmd = app.add_subcommand("dual", "Dual configuration");
  dual_cmd->add_option("config", in)->required();
  dual_cmd->add_option("-o,--output", out_path);

  auto* equiv_cmd = app.add_subcommand("equiv", "Permutation/signature equivalence");
  equiv_cmd->add_option("a", in)->required();
  equiv_cmd->add_option("b", in2)->required();
  equiv_cmd->add_option("--budget", budget, "Search nodes per branch");

  auto* render_cmd = app.add_subcommand("render", "Draw a planar configuration as SVG");
  render_cmd->add_option("config", in)->required();
  render_cmd->add_option("-o,--output", out_path);
  render_cmd->add_option("--bbox", bbox, "x0,y0,x1,y1");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Export reference data");
  fixtures_cmd->add_option("--export", dir, "Target directory")->required();

  auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Re-verify the reference data");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  apply_threads(threads);
  const Context ctx{out, err, json_out};
  try {
    if (*condense_cmd) return cmd_condense(ctx, in, out_path);
    if (*mr_cmd) {
      mr_opt.auto_search = !no_search;
      if (no_search) mr_opt.try_ranks.clear();
      return cmd_mr(ctx, in, mr_opt);
    }
    if (*mr2_cmd) return cmd_mr2(ctx, in, limit);
    if (*encode_cmd) return cmd_encode(ctx, in, out_path);
    if (*realize_cmd) {
      search.direct = direct;
      return cmd_realize(ctx, in, rank, search, out_path);
    }
    if (*rat_cmd) return cmd_rationalize(ctx, in, from, out_path, by_rows);
    if (*compose_cmd) return cmd_compose(ctx, in, in2, out_path);
    if (*dual_cmd) return cmd_dual(ctx, in, out_path);
    if (*equiv_cmd) return cmd_equiv(ctx, in, in2, budget);
    if (*render_cmd) return cmd_render(ctx, in, out_path, bbox);
    if (*fixtures_cmd) return cmd_fixtures(ctx, dir);
    if (*selfcheck_cmd) return cmd_selfcheck(ctx);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExhausted;
  } catch (const NotFound& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace signrank
