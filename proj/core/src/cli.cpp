#include "sc/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "sc/config.hpp"
#include "sc/report.hpp"

namespace sc {

namespace {

int exit_code(const Error& e) {
  switch (e.kind) {
    case Error::Kind::validation: return 1;
    case Error::Kind::verification: return 2;
    case Error::Kind::parse: return 3;
  }
  return 1;
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (const std::string& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"small-cancellation toolkit over free products of finite groups"};
  app.require_subcommand(1);

  // factors-check
  auto* c_check = app.add_subcommand(
      "factors-check", "validate tables, hosts, generators and embeddings");
  std::string check_config;
  bool check_json = false;
  c_check->add_option("config", check_config)->required();
  c_check->add_flag("--json", check_json);

  // build
  auto* c_build = app.add_subcommand(
      "build", "build a presentation from a family configuration");
  std::string build_config, build_out, build_theorem, build_closure;
  int build_n = 0;
  bool build_force = false;
  c_build->add_option("config", build_config)->required();
  c_build->add_option("-o,--output", build_out, "presentation file to write")
      ->required();
  c_build->add_option("--theorem", build_theorem)
      ->check(CLI::IsMember({"a", "b"}));
  c_build->add_option("--n", build_n, "override the configured n");
  c_build->add_flag("--force", build_force,
                    "bypass the coprime-to-6 gate (experiments)");
  c_build->add_option("--closure", build_closure)
      ->check(CLI::IsMember({"rotations", "full"}));

  // verify
  auto* c_verify =
      app.add_subcommand("verify", "check C'(lambda) with exact rationals");
  std::string verify_pres, verify_lambda;
  int verify_minlen = 0, verify_jobs = 1;
  bool verify_json = false, verify_mat = false;
  std::size_t verify_maxletters = 2000;
  c_verify->add_option("presentation", verify_pres)->required();
  c_verify->add_option("--lambda", verify_lambda, "e.g. 1/6");
  c_verify->add_option("--min-len", verify_minlen);
  c_verify->add_option("--jobs", verify_jobs);
  c_verify->add_flag("--materialized", verify_mat,
                     "use the materialized slow path (size-guarded)");
  c_verify->add_option("--max-letters", verify_maxletters,
                       "materialized-path size guard");
  c_verify->add_flag("--json", verify_json);

  // min-n
  auto* c_minn = app.add_subcommand(
      "min-n", "least n whose build passes the metric condition");
  std::string minn_config, minn_lambda;
  int minn_max = 64, minn_jobs = 1;
  bool minn_coprime = false, minn_json = false;
  c_minn->add_option("config", minn_config)->required();
  c_minn->add_flag("--coprime6", minn_coprime, "require gcd(n, 6) = 1");
  c_minn->add_option("--max-n", minn_max);
  c_minn->add_option("--lambda", minn_lambda);
  c_minn->add_option("--jobs", minn_jobs);
  c_minn->add_flag("--json", minn_json);

  // reduce
  auto* c_reduce =
      app.add_subcommand("reduce", "run Dehn's algorithm on a word");
  std::string reduce_pres;
  std::vector<std::string> reduce_word;
  bool reduce_json = false;
  c_reduce->add_option("presentation", reduce_pres)->required();
  c_reduce->add_option("word", reduce_word, "word literal")->expected(-1);
  c_reduce->add_flag("--json", reduce_json);

  // pieces
  auto* c_pieces = app.add_subcommand(
      "pieces", "report worst pieces and ratios per relator family");
  std::string pieces_pres, pieces_lambda, pieces_family;
  int pieces_top = 0, pieces_jobs = 1, pieces_lo = 0, pieces_hi = -1;
  bool pieces_json = false;
  c_pieces->add_option("presentation", pieces_pres)->required();
  c_pieces->add_option("--top", pieces_top, "print only the k worst rows");
  c_pieces->add_option("--lambda", pieces_lambda);
  c_pieces->add_option("--family", pieces_family,
                       "ratio scan over one relator family (u, v, w_a, ...)");
  c_pieces->add_option("--lo", pieces_lo);
  c_pieces->add_option("--hi", pieces_hi);
  c_pieces->add_option("--jobs", pieces_jobs);
  c_pieces->add_flag("--json", pieces_json);

  // oracle
  auto* c_oracle = app.add_subcommand(
      "oracle", "brute-force normal-closure membership (toy scale)");
  std::string oracle_pres;
  std::vector<std::string> oracle_word;
  int oracle_maxlen = 12;
  bool oracle_json = false;
  c_oracle->add_option("presentation", oracle_pres)->required();
  c_oracle->add_option("word", oracle_word)->expected(-1);
  c_oracle->add_option("--max-len", oracle_maxlen);
  c_oracle->add_flag("--json", oracle_json);

  // lengths
  auto* c_lengths = app.add_subcommand(
      "lengths", "relator length table: closed forms vs measured");
  std::string lengths_pres;
  bool lengths_as_json = false;
  c_lengths->add_option("presentation", lengths_pres)->required();
  c_lengths->add_flag("--json", lengths_as_json);

  std::vector<std::string> rargs(args.rbegin(), args.rend());
  try {
    app.parse(rargs);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(c_check)) {
      ProjectConfig cfg = load_config(check_config);
      // building performs the full validation chain
      ConstructionParams params;
      params.n = cfg.n;
      params.require_coprime6 = false;
      params.closure = cfg.closure;
      Presentation pres = build_from_config(cfg, params);
      (void)pres;
      if (check_json)
        out << "{\"ok\": true}\n";
      else
        out << "factors, hosts, generators and embeddings: OK\n";
      return 0;
    }

    if (app.got_subcommand(c_build)) {
      ProjectConfig cfg = load_config(build_config);
      if (!build_theorem.empty()) cfg.theorem = build_theorem[0];
      if (build_n > 0) cfg.n = build_n;
      if (!build_closure.empty())
        cfg.closure = build_closure == "full" ? ClosureMode::full_conjugates
                                              : ClosureMode::rotations;
      ConstructionParams params;
      params.n = cfg.n;
      params.require_coprime6 = !build_force;
      params.closure = cfg.closure;
      Presentation pres = build_from_config(cfg, params);
      save_presentation(pres, build_out);
      out << "wrote " << build_out << " (" << pres.seeds.size()
          << " seed relators, n = " << pres.n << ")\n";
      return 0;
    }

    if (app.got_subcommand(c_verify)) {
      Presentation pres = load_presentation(verify_pres);
      VerificationParams params;
      if (!verify_lambda.empty()) params.lambda = Rational::parse(verify_lambda);
      params.min_relator_length = verify_minlen;
      params.jobs = verify_jobs;
      PieceReport rep =
          verify_mat ? verify_metric_materialized(pres.symmetrized, params,
                                                  pres.labels(),
                                                  verify_maxletters)
                     : verify_metric(pres.symmetrized, params, pres.labels());
      out << (verify_json ? report_json(rep) : render_report_text(rep));
      return rep.pass ? 0 : 2;
    }

    if (app.got_subcommand(c_minn)) {
      ProjectConfig cfg = load_config(minn_config);
      if (cfg.theorem != 'a')
        throw ValidationError("min-n searches the two-generator construction");
      VerificationParams params;
      if (!minn_lambda.empty()) params.lambda = Rational::parse(minn_lambda);
      params.jobs = minn_jobs;
      int n = find_min_n(cfg.members, params, minn_coprime, minn_max);
      if (minn_json)
        out << "{\"min_n\": " << n << "}\n";
      else
        out << "min n = " << n << (minn_coprime ? " (coprime to 6)" : "")
            << "\n";
      return 0;
    }

    if (app.got_subcommand(c_reduce)) {
      Presentation pres = load_presentation(reduce_pres);
      Word w = parse_word_literal(pres.family, join(reduce_word));
      DehnSolver solver(pres);
      auto [final_word, trace] = solver.reduce(w);
      if (reduce_json) {
        out << trace_json(trace);
      } else {
        out << render_trace(trace);
        out << (final_word.empty() ? "trivial\n" : "not reducible to 1\n");
      }
      return 0;
    }

    if (app.got_subcommand(c_pieces)) {
      Presentation pres = load_presentation(pieces_pres);
      VerificationParams params;
      if (!pieces_lambda.empty()) params.lambda = Rational::parse(pieces_lambda);
      params.jobs = pieces_jobs;
      PieceReport rep = verify_metric(pres.symmetrized, params, pres.labels());
      if (!pieces_family.empty()) {
        auto tag = tag_from_name(pieces_family);
        if (!tag) throw ValidationError("unknown relator family '" +
                                        pieces_family + "'");
        int hi = pieces_hi >= 0 ? pieces_hi
                                : static_cast<int>(pres.seeds.size());
        auto rows = ratio_scan(pres, rep, *tag, pieces_lo, hi);
        out << "worst ratio per index (" << pieces_family << ")\n";
        out << render_ratio_scan_text(rows);
        return 0;
      }
      if (pieces_top > 0) {
        PieceReport trimmed = rep;
        std::vector<ReportRow> rows = rep.rows;
        std::stable_sort(rows.begin(), rows.end(),
                         [](const ReportRow& a, const ReportRow& b) {
                           return b.ratio < a.ratio;
                         });
        if (static_cast<int>(rows.size()) > pieces_top)
          rows.resize(pieces_top);
        trimmed.rows = std::move(rows);
        out << (pieces_json ? report_json(trimmed)
                            : render_report_text(trimmed));
      } else {
        out << (pieces_json ? report_json(rep) : render_report_text(rep));
      }
      return 0;
    }

    if (app.got_subcommand(c_oracle)) {
      Presentation pres = load_presentation(oracle_pres);
      Word w = parse_word_literal(pres.family, join(oracle_word));
      OracleVerdict v = oracle_is_trivial(pres, w, oracle_maxlen);
      const char* verdict =
          v == OracleVerdict::trivial ? "trivial" : "unknown";
      if (oracle_json)
        out << "{\"verdict\": \"" << verdict << "\"}\n";
      else
        out << verdict << "\n";
      return 0;
    }

    if (app.got_subcommand(c_lengths)) {
      Presentation pres = load_presentation(lengths_pres);
      auto rows = predicted_lengths(pres);
      out << (lengths_as_json ? lengths_json(rows) : render_lengths_text(rows));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return 1;
}

}  // namespace sc
