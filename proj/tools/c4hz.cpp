// c4hz: homotopy Mackey functors of C4-equivariant HZ from representation-sphere chains.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "c4hz/closedform.hpp"
#include "c4hz/engine.hpp"
#include "c4hz/groupcoh.hpp"

using namespace c4hz;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

struct Window {
  long a = 8, b = 5, c = 5;

  static Window parse(const std::string& s) {
    Degree d = Degree::parse(s);
    if (d.a < 0 || d.b < 0 || d.c < 0) throw std::invalid_argument("window bounds must be nonnegative: " + s);
    return {d.a, d.b, d.c};
  }
  std::vector<Degree> degrees() const {
    std::vector<Degree> out;
    for (long x = -a; x <= a; ++x)
      for (long y = -b; y <= b; ++y)
        for (long z = -c; z <= c; ++z) out.push_back({x, y, z});
    return out;
  }
};

std::string group_str(const FinAbGroup& g) { return g.str(); }

Subgroup parse_level(const std::string& s) {
  if (s == "top") return Subgroup::C4;
  if (s == "mid") return Subgroup::C2;
  if (s == "bot") return Subgroup::e;
  throw std::invalid_argument("level must be top, mid or bot");
}

std::size_t job_count(int requested) {
  if (const char* env = std::getenv("C4HZ_JOBS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("C4HZ_JOBS is not a positive integer: ") + env);
    }
  }
  if (requested > 0) return static_cast<std::size_t>(requested);
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs f(i) for i in [0, n) on a bounded pool; results are stored by index so output order is fixed.
template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& f) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, std::max<std::size_t>(n, 1)); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------- compute

json compute_json(const HomotopyResult& r, std::optional<Subgroup> level) {
  json j = r.to_json();
  j["names"] = basis_json(r.degree);
  j["closedform_agrees"] = compare(r.mackey, mackey_at(r.degree));
  if (level) {
    json out = {{"degree", j["degree"]}, {"level", name(*level)}};
    out["group"] = group_to_json(r.mackey.level(*level));
    out["names"] = j["names"][name(*level)];
    out["witness"] = j["witnesses"][name(*level)];
    return out;
  }
  return j;
}

void compute_text(std::ostream& os, const HomotopyResult& r, std::optional<Subgroup> level) {
  const auto names = basis_json(r.degree);
  os << "pi_{" << r.degree.str() << "} HZ\n";
  for (auto k : {Subgroup::C4, Subgroup::C2, Subgroup::e}) {
    if (level && *level != k) continue;
    os << "  " << name(k) << ": " << group_str(r.mackey.level(k));
    const auto& gens = names[name(k)];
    if (!gens.empty()) {
      os << "  <";
      for (std::size_t i = 0; i < gens.size(); ++i)
        os << (i ? ", " : "") << gens[i]["name"].get<std::string>() << " (" << gens[i]["order"].get<std::string>()
           << ")";
      os << ">";
    }
    os << "\n";
  }
  if (!level) {
    const auto& m = r.mackey;
    os << "  res42 " << m.res42.str() << "  tr42 " << m.tr42.str() << "\n";
    os << "  res21 " << m.res21.str() << "  tr21 " << m.tr21.str() << "\n";
    os << "  weyl_mid " << m.weyl_mid.str() << "  weyl_bot " << m.weyl_bot.str() << "\n";
    os << "  functors:";
    for (const auto& f : names["functors"]) os << " (" << f.get<int>() << ")";
    os << "\n  closed form: " << (compare(m, mackey_at(r.degree)) ? "agrees" : "DIFFERS") << "\n";
  }
}

int cmd_compute(const std::string& degree, const std::string& level_s, const std::string& format, Output& out,
                const Engine& engine) {
  const Degree d = Degree::parse(degree);
  std::optional<Subgroup> level;
  if (!level_s.empty()) level = parse_level(level_s);
  auto r = engine.homotopy(d);
  if (format == "json") {
    out.os() << compute_json(*r, level).dump(2) << "\n";
  } else if (format == "latex") {
    out.os() << latex_line(d) << "\n";
  } else {
    compute_text(out.os(), *r, level);
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct DegreeReport {
  Degree degree;
  bool compare_ok = true, engine_axioms = true, closedform_axioms = true, ker_im = true;
  bool resource_error = false;
  std::string detail;
  bool passed() const { return !resource_error && compare_ok && engine_axioms && closedform_axioms && ker_im; }
};

DegreeReport verify_degree(const Engine& engine, const Degree& d) {
  DegreeReport rep;
  rep.degree = d;
  try {
    auto r = engine.homotopy(d);
    const MackeyC4 cf = mackey_at(d);
    rep.detail = compare_detail(r->mackey, cf);
    rep.compare_ok = rep.detail.empty();
    auto ea = check_axioms(r->mackey), ca = check_axioms(cf);
    rep.engine_axioms = ea.passed();
    rep.closedform_axioms = ca.passed();
    if (!rep.engine_axioms) rep.detail += " engine axioms: " + ea.failures();
    if (!rep.closedform_axioms) rep.detail += " closed-form axioms: " + ca.failures();
    auto ki = engine.verify_ker_im(d);
    rep.ker_im = ki.passed();
    if (!rep.ker_im) rep.detail += " " + ki.str();
  } catch (const ResourceError& e) {
    rep.resource_error = true;
    rep.detail = e.what();
  }
  return rep;
}

int cmd_verify(const Window& w, std::size_t jobs, const std::string& format, const std::string& fault, Output& out,
               const Engine& engine) {
  if (!fault.empty()) inject_fault(Degree::parse(fault));
  const auto degrees = w.degrees();
  std::vector<DegreeReport> reports(degrees.size());
  parallel_for(degrees.size(), jobs, [&](std::size_t i) { reports[i] = verify_degree(engine, degrees[i]); });
  inject_fault(std::nullopt);

  std::size_t passed = 0, mismatched = 0, resource = 0;
  for (const auto& r : reports) {
    if (r.resource_error) ++resource;
    else if (r.passed()) ++passed;
    else ++mismatched;
  }
  auto& os = out.os();
  if (format == "json") {
    json j;
    j["window"] = {w.a, w.b, w.c};
    j["degrees"] = reports.size();
    j["passed"] = passed;
    j["failed"] = mismatched;
    j["resource_errors"] = resource;
    json per = json::array();
    for (const auto& r : reports)
      per.push_back({{"degree", {r.degree.a, r.degree.b, r.degree.c}},
                     {"compare", r.compare_ok},
                     {"engine_axioms", r.engine_axioms},
                     {"closedform_axioms", r.closedform_axioms},
                     {"ker_im", r.ker_im},
                     {"resource_error", r.resource_error},
                     {"passed", r.passed()},
                     {"detail", r.detail}});
    j["results"] = per;
    os << j.dump(2) << "\n";
  } else {
    const bool tex = format == "latex";
    for (const auto& r : reports) {
      if (tex && r.passed()) continue;
      os << (tex ? "% " : "") << r.degree.str() << " "
         << (r.resource_error ? "RESOURCE" : r.passed() ? "pass" : "FAIL") << " compare=" << r.compare_ok
         << " axioms=" << (r.engine_axioms && r.closedform_axioms) << " ker_im=" << r.ker_im;
      if (!r.passed()) os << "  " << r.detail;
      os << "\n";
    }
    os << (tex ? "% " : "") << "verified " << reports.size() << " degrees: " << passed << " passed, " << mismatched
       << " failed, " << resource << " resource errors\n";
  }
  if (mismatched) return kExitVerifyFailed;
  if (resource) return kExitResource;
  return 0;
}

// ---------------------------------------------------------------- tables

struct TableRow {
  Degree degree;
  FinAbGroup fixture, recomputed;
  bool agree() const { return fixture == recomputed; }
};

int emit_table(const std::string& kind, const std::string& title, const std::vector<std::string>& lines,
               const std::vector<TableRow>& rows, const std::string& recomputed_by, const std::string& format,
               Output& out) {
  std::size_t agree = 0;
  for (const auto& r : rows) agree += r.agree();
  auto& os = out.os();
  if (format == "json") {
    json j;
    j["kind"] = kind;
    j["title"] = title;
    j["lines"] = lines;
    j["recomputed_by"] = recomputed_by;
    json per = json::array();
    for (const auto& r : rows)
      per.push_back({{"degree", {r.degree.a, r.degree.b, r.degree.c}},
                     {"fixture", group_to_json(r.fixture)},
                     {"recomputed", group_to_json(r.recomputed)},
                     {"agree", r.agree()}});
    j["degrees"] = per;
    j["agree"] = agree == rows.size();
    os << j.dump(2) << "\n";
  } else if (format == "latex") {
    os << "\\begin{aligned}\n";
    for (std::size_t k = 0; k < lines.size(); ++k)
      os << (k == 0 ? "  " + title + " &= " : std::string("  &\\oplus ")) << lines[k] << "\\\\\n";
    os << "\\end{aligned}\n";
    for (const auto& r : rows)
      if (!r.agree())
        os << "% " << r.degree.str() << " fixture " << r.fixture.str() << " recomputed " << r.recomputed.str() << "\n";
    if (!rows.empty()) os << "% " << recomputed_by << ": agrees at " << agree << "/" << rows.size() << " degrees\n";
  } else {
    os << title << "\n";
    for (std::size_t k = 0; k < lines.size(); ++k) os << (k == 0 ? "    " : "  + ") << lines[k] << "\n";
    if (!rows.empty()) {
      os << "degree        fixture        " << recomputed_by << "\n";
      for (const auto& r : rows) {
        if (r.fixture.is_zero() && r.recomputed.is_zero()) continue;
        std::ostringstream line;
        line << r.degree.str();
        std::string s = line.str();
        s.resize(14, ' ');
        std::string f = r.fixture.str();
        f.resize(15, ' ');
        os << s << f << r.recomputed.str() << (r.agree() ? "" : "   <-- differs") << "\n";
      }
      os << "agrees at " << agree << "/" << rows.size() << " degrees\n";
    }
  }
  return agree == rows.size() ? 0 : kExitVerifyFailed;
}

std::vector<std::string> line_texts(const FixtureTable& t) {
  std::vector<std::string> out;
  for (const auto& l : t.lines) out.push_back(l.latex);
  return out;
}

int cmd_tables(const std::string& kind, const Window& w, std::size_t jobs, const std::string& format, Output& out) {
  const auto degrees = w.degrees();
  std::vector<TableRow> rows(degrees.size());
  auto localized = [&](LocGen g) {
    const FixtureTable t = fixture_for(g);
    parallel_for(degrees.size(), jobs, [&](std::size_t i) {
      rows[i] = {degrees[i], t.group_at(degrees[i]), localize(g, degrees[i]).group};
    });
    return emit_table(kind, t.title, line_texts(t), rows, std::string("colimit along ") + name(g), format, out);
  };
  if (kind == "hh") {
    const FixtureTable t = table_hh();
    for (std::size_t i = 0; i < degrees.size(); ++i)
      rows[i] = {degrees[i], t.group_at(degrees[i]), homotopy_fixed_points(degrees[i])};
    std::vector<std::string> lines = {"\\mathbb{Z}[a_{\\alpha},a_{\\lambda},u_{2\\alpha}^{\\pm},u_{\\lambda}^{\\pm}]/"
                                      "(a_{2\\alpha}u_{\\lambda}-2a_{\\lambda}u_{2\\alpha},2a_{\\alpha},4a_{\\lambda})"};
    auto split = line_texts(t);
    lines.insert(lines.end(), split.begin(), split.end());
    return emit_table(kind, t.title, lines, rows, "HFPSS E_2", format, out);
  }
  if (kind == "hphi2") return localized(LocGen::a_lambda);
  if (kind == "hphi4") return localized(LocGen::a_alpha);
  if (kind.rfind("localization:", 0) == 0) return localized(parse_locgen(kind.substr(13)));
  if (kind == "answer") {
    const FixtureTable t = table_answer();
    for (std::size_t i = 0; i < degrees.size(); ++i)
      rows[i] = {degrees[i], t.group_at(degrees[i]), basis_at(degrees[i], Subgroup::C4).group};
    return emit_table(kind, t.title, line_texts(t), rows, "basis", format, out);
  }
  if (kind == "borel-e2") {
    auto& os = out.os();
    json cols = json::array();
    for (const auto& d : degrees) {
      if (d.dim() != 0) continue;
      auto col = hfpss_e2(d, 8);
      if (format == "json") {
        json g = json::array();
        for (const auto& x : col.groups) g.push_back(group_to_json(x));
        cols.push_back({{"degree", {d.a, d.b, d.c}}, {"E2", g}, {"collapses", col.collapses}});
      } else {
        os << (format == "latex" ? "% " : "") << "E_2^{" << d.str() << ",s}, s=0..8:";
        for (const auto& x : col.groups) os << " " << x.str();
        os << "\n";
      }
    }
    if (format == "json") os << json{{"kind", kind}, {"columns", cols}}.dump(2) << "\n";
    return 0;
  }
  throw std::invalid_argument("unknown table kind '" + kind +
                              "' (expected hh, hphi2, hphi4, borel-e2, answer or localization:{aa,al,u2a})");
}

// ---------------------------------------------------------------- cohomology

int cmd_cohomology(int order, const std::string& coeff, int qmax, const std::string& cup_s, const std::string& coeff2,
                   const std::string& format, Output& out) {
  const CoeffModule m = parse_coeff(coeff);
  auto& os = out.os();
  json j;
  j["order"] = order;
  j["coefficients"] = name(m);
  json groups = json::array();
  for (int q = 0; q <= qmax; ++q) groups.push_back(group_to_json(cohomology(order, m, q)));
  j["groups"] = groups;
  if (!cup_s.empty()) {
    const auto comma = cup_s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--cup expects p,q");
    const int p = std::stoi(cup_s.substr(0, comma)), q = std::stoi(cup_s.substr(comma + 1));
    if (p < 0 || q < 0) throw std::invalid_argument("--cup degrees must be nonnegative");
    const CoeffModule m2 = coeff2.empty() ? m : parse_coeff(coeff2);
    j["cup"] = {{"p", p}, {"q", q}, {"second", name(m2)}, {"matrix", matrix_to_json(cup(order, p, q, m, m2))}};
  }
  if (format == "json") {
    os << j.dump(2) << "\n";
    return 0;
  }
  const bool tex = format == "latex";
  for (int q = 0; q <= qmax; ++q)
    os << (tex ? "H^{" + std::to_string(q) + "}(C_{" + std::to_string(order) + "};" + name(m) + ") = "
               : "H^" + std::to_string(q) + "(C" + std::to_string(order) + "; " + name(m) + ") = ")
       << cohomology(order, m, q).str() << (tex ? "\\\\" : "") << "\n";
  if (j.contains("cup"))
    os << (tex ? "% " : "") << "cup H^" << j["cup"]["p"] << " x H^" << j["cup"]["q"] << ": "
       << j["cup"]["matrix"].dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy Mackey functors of C4-equivariant HZ. Degrees are a,b,c meaning a + b*alpha + c*lambda."};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t budget = EngineConfig{}.budget;
  int jobs = 0;
  std::string format = "text", out_path;
  app.add_option("--budget", budget, "Largest lattice rank allowed per chain degree")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Worker threads (C4HZ_JOBS overrides)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
  app.add_option("--out", out_path, "Write output to this file");

  std::string degree, level, window = "8,5,5", fault, kind, coeff = "Z", coeff2, cup_s;
  int order = 4, qmax = 10;

  auto* compute = app.add_subcommand("compute", "Compute pi_d as a Mackey functor");
  compute->add_option("-d,--degree", degree, "Degree a,b,c")->required();
  compute->add_option("--level", level, "Print one level")->check(CLI::IsMember({"top", "mid", "bot"}));

  auto* verify = app.add_subcommand("verify", "Compare engine and closed form over a window");
  verify->add_option("--window", window, "Bounds A,B,C for |a|,|b|,|c|");
  verify->add_option("--inject-fault", fault, "Test mode: corrupt the closed form at this degree");

  auto* tables = app.add_subcommand("tables", "Emit a fixture table next to its recomputation");
  tables->add_option("kind", kind, "hh, hphi2, hphi4, borel-e2, answer, localization:{aa,al,u2a}")->required();
  tables->add_option("--window", window, "Bounds A,B,C for the side-by-side comparison");

  auto* coh = app.add_subcommand("cohomology", "Group cohomology of a cyclic 2-group");
  coh->add_option("--order", order, "Group order (a power of two)");
  coh->add_option("--coeff", coeff, "Z, Zt or Z2");
  coh->add_option("--max", qmax, "Largest degree")->check(CLI::NonNegativeNumber);
  coh->add_option("--cup", cup_s, "Cup product H^p x H^q, given as p,q");
  coh->add_option("--coeff2", coeff2, "Coefficients of the second factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    Output out(out_path);
    Engine engine(EngineConfig{budget});
    if (*compute) return cmd_compute(degree, level, format, out, engine);
    if (*verify) return cmd_verify(Window::parse(window), job_count(jobs), format, fault, out, engine);
    if (*tables) return cmd_tables(kind, Window::parse(window), job_count(jobs), format, out);
    if (*coh) return cmd_cohomology(order, coeff, qmax, cup_s, coeff2, format, out);
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
