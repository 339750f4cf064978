#include "hsp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsp/families.hpp"

namespace hsp {

namespace {

std::string params_suffix(const IdentityReport& r) {
  std::string s;
  for (const auto& [k, v] : r.params) s += " " + k + "=" + std::to_string(v);
  return s;
}

DetSignMode parse_sign_mode(const std::string& s) {
  if (s == "as-printed") return DetSignMode::AsPrinted;
  if (s == "alternating-k") return DetSignMode::AlternatingK;
  return DetSignMode::SubsetSign;
}

int default_jobs() {
  if (const char* env = std::getenv("HSP_VERIFY_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

void print_matrix(std::ostream& out, const PolyMatrix& m) {
  for (int r = 0; r < m.rows; ++r) {
    out << "[";
    for (int c = 0; c < m.cols; ++c) {
      if (c) out << ", ";
      out << to_string(m.at(r, c));
    }
    out << "]\n";
  }
}

struct DumpRequest {
  std::string what;
  std::string family;
  std::optional<int> n, p, q, k;
};

PairFamily dump_family(const DumpRequest& req) {
  if (req.family.empty())
    throw CLI::ValidationError("dump", "--what " + req.what + " needs --family");
  if (req.family == "su") {
    if (!req.p || !req.q)
      throw CLI::ValidationError("dump", "family su needs --p and --q");
    return PairFamily::su(*req.p, *req.q);
  }
  if (!req.n) throw CLI::ValidationError("dump", "family " + req.family + " needs --n");
  return req.family == "sostar" ? PairFamily::sostar(*req.n) : PairFamily::sp(*req.n);
}

int cmd_dump(const DumpRequest& req, std::ostream& out, std::ostream& err) {
  try {
    if (req.what == "phi") {
      if (!req.n) throw CLI::ValidationError("dump", "--what phi needs --n");
      if (*req.n < 1 || *req.n > 6)
        throw CLI::ValidationError("dump", "phi needs 1 <= n <= 6");
      print_matrix(out, build_phi(*req.n, Polynomial::variable(var_u())));
      return 0;
    }
    const PairFamily f = dump_family(req);
    if (req.what == "basis") {
      for (const BasisElement& b : build_basis(f)) {
        out << b.name() << ":";
        for (int r = 0; r < f.N(); ++r)
          for (int c = 0; c < f.N(); ++c)
            if (!b.mat.at(r, c).is_zero())
              out << " (" << r + 1 << "," << c + 1 << ")="
                  << rational_to_string(b.mat.at(r, c).constant_value());
        out << "\n";
      }
      return 0;
    }
    if (req.what == "sigma" || req.what == "sigma-tilde") {
      print_matrix(out, build_sigma(f, req.what == "sigma-tilde"));
      return 0;
    }
    // gamma and Gamma: one k if given, the whole tower otherwise.
    std::vector<int> ks;
    if (req.k)
      ks.push_back(*req.k);
    else
      for (int k = 0; k <= f.rank_r(); ++k) ks.push_back(k);
    for (int k : ks) {
      if (req.what == "gamma")
        out << "gamma_" << k << " = " << to_string(gamma_k(f, k)) << "\n";
      else
        out << "Gamma_" << k << " = " << to_string(Gamma_k(f, k)) << "\n";
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

std::string render_text(const std::vector<IdentityReport>& reports) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const IdentityReport& r : reports) {
    out << (r.pass ? "PASS " : "FAIL ") << r.identity;
    if (r.family != "-") out << " " << r.family;
    out << params_suffix(r);
    if (!r.pass) {
      ++failed;
      out << " witness: " << (r.witness.empty() ? "(none)" : r.witness);
    }
    out << "\n";
  }
  out << "summary: " << reports.size() << " checks, " << reports.size() - failed
      << " passed, " << failed << " failed\n";
  return out.str();
}

std::string render_json(const std::vector<IdentityReport>& reports) {
  nlohmann::json doc;
  doc["schema_version"] = report_schema_version;
  doc["tool_version"] = tool_version;
  doc["reports"] = nlohmann::json::array();
  std::size_t failed = 0;
  for (const IdentityReport& r : reports) {
    nlohmann::json jr;
    jr["identity"] = r.identity;
    jr["family"] = r.family;
    jr["params"] = r.params;
    jr["status"] = r.pass ? "pass" : "fail";
    jr["witness"] = r.witness;
    jr["elapsed_ms"] = r.elapsed_ms;
    jr["tool_version"] = tool_version;
    doc["reports"].push_back(std::move(jr));
    if (!r.pass) ++failed;
  }
  doc["summary"] = {{"total", reports.size()},
                    {"passed", reports.size() - failed},
                    {"failed", failed}};
  return doc.dump(2) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact verification of Hermitian symmetric pair identities"};
  app.name("hsp-verify");
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);

  CLI::App* verify = app.add_subcommand("verify", "run identity checks");
  std::vector<std::string> families, identities;
  std::optional<int> n, p, q;
  bool all = false, unsafe = false;
  std::string format = "text", out_path, sign_mode = "alternating-k";
  int jobs = default_jobs();
  std::vector<int> mutate;
  verify->add_option("--family", families, "restrict to families")
      ->check(CLI::IsMember({"sostar", "sp", "su"}));
  verify->add_option("--identity", identities, "restrict to identities");
  verify->add_option("--n", n, "explicit rank for sostar/sp grids");
  verify->add_option("--p", p, "explicit p for su grids");
  verify->add_option("--q", q, "explicit q for su grids");
  verify->add_flag("--all", all, "run the full default grid");
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out_path, "write the report to a file");
  verify->add_option("--jobs", jobs, "worker threads (default: HSP_VERIFY_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--sign-mode", sign_mode, "determinant summation sign convention")
      ->check(CLI::IsMember({"as-printed", "alternating-k", "subset-sign"}));
  verify->add_flag("--unsafe", unsafe, "override rank cost guards");
  verify->add_option("--mutate", mutate, "negate matrix entry ROW COL before checking")
      ->expected(2);

  CLI::App* dump = app.add_subcommand("dump", "print constructed objects");
  DumpRequest req;
  dump->add_option("--what", req.what, "object to print")
      ->required()
      ->check(CLI::IsMember({"basis", "sigma", "sigma-tilde", "phi", "gamma", "Gamma"}));
  dump->add_option("--family", req.family, "family name")
      ->check(CLI::IsMember({"sostar", "sp", "su"}));
  dump->add_option("--n", req.n, "rank for sostar/sp");
  dump->add_option("--p", req.p, "p for su");
  dump->add_option("--q", req.q, "q for su");
  dump->add_option("--k", req.k, "single tower index");

  // CLI11's vector overload consumes arguments back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << app.help();
    return 2;
  }

  if (dump->parsed()) return cmd_dump(req, out, err);

  if (!all && families.empty() && identities.empty() && !n && !p && !q) {
    err << "nothing selected: pass --all or narrow with --family/--identity/--n/--p/--q\n";
    err << app.help();
    return 2;
  }

  SuiteSelection sel;
  sel.identities = identities;
  sel.families = families;
  sel.n = n;
  sel.p = p;
  sel.q = q;
  sel.sign_mode = parse_sign_mode(sign_mode);
  sel.unsafe = unsafe;
  if (!mutate.empty()) {
    sel.options.mutate = true;
    sel.options.mutate_row = mutate[0];
    sel.options.mutate_col = mutate[1];
  }

  std::vector<IdentityReport> reports;
  try {
    reports = run_suite(sel, jobs);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (reports.empty()) {
    err << "selection matches no checks\n";
    return 2;
  }

  const std::string rendered = format == "json" ? render_json(reports) : render_text(reports);
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "cannot open " << out_path << "\n";
      return 2;
    }
    file << rendered;
  } else {
    out << rendered;
  }
  for (const IdentityReport& r : reports)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace hsp
