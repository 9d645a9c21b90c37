// khcover: command-line front end.
//
//   khcover {kh|dinv|bounds|qa|ss|det} [flags] <files or directories>
//
// Exit codes: 0 ok, 2 parse/validation error, 3 budget exceeded,
// 4 diagram not alternating.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "khcover/khcover.hpp"
#include "khcover/json_io.hpp"

namespace fs = std::filesystem;
using namespace khcover;
using nlohmann::json;

namespace {

struct Options {
  std::string command;
  std::string format = "text";
  unsigned threads = 0;
  bool reduced = false;
  bool mirror = false;
  std::optional<int> mark;
  std::vector<int> reverse;
  std::string budget;
  int tree_seed = conventions::default_tree_seed;
  bool lattice = false;
  int r_max = 0;
  std::vector<std::string> inputs;
};

/// Result of one input file, rendered in every format up front so that
/// batch output is assembled in input order.
struct Output {
  std::string name;
  int code = 0;
  std::string error;
  json j;
  std::string csv;
  std::string text;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded:
      return 3;
    case ErrorKind::NotAlternating:
      return 4;
    default:
      return 2;
  }
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".pd") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

/// PD file: '#' starts a comment; everything else is PD text.
LinkDiagram load(const fs::path& path, const Options& opt) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::MalformedCode, "cannot read " + path.string());
  std::string text, line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    text += line + '\n';
  }
  LinkDiagram d = parse_pd(text, path.stem().string());
  for (int c : opt.reverse) d = reverse_component(d, c);
  if (opt.mirror) d = mirror(d);
  if (opt.mark) d = d.with_mark(*opt.mark);
  return d;
}

/// Reduced computations fall back to arc 1 when no mark is given.
LinkDiagram marked(const LinkDiagram& d) {
  if (d.mark() || d.num_arcs() == 0) return d;
  return d.with_mark(1);
}

QABudget parse_budget(const std::string& s) {
  QABudget b;
  if (s.empty()) return b;
  try {
    if (s.back() == 's') {
      const bool ms = s.size() > 2 && s.compare(s.size() - 2, 2, "ms") == 0;
      const double v = std::stod(s.substr(0, s.size() - (ms ? 2 : 1)));
      return QABudget::seconds(ms ? v / 1000 : v);
    }
    b.max_nodes = std::stoull(s);
  } catch (const std::exception&) {
    fail(ErrorKind::MalformedCode, "bad --budget '" + s + "' (use a node count or e.g. 10s)");
  }
  return b;
}

std::string big_str(const BigInt& v) { return to_string(v); }

void run_kh(const LinkDiagram& d0, const Options& opt, Output& o) {
  const LinkDiagram d = opt.reduced ? marked(d0) : d0;
  const KhTable t = khovanov_homology(d, opt.reduced);
  o.j = io::to_json(t);
  o.j["name"] = d.name();
  o.j["jones"] = graded_euler(t).to_string();
  std::ostringstream csv;
  for (auto& [mq, r] : t.ranks) csv << d.name() << ',' << mq.first << ',' << mq.second << ',' << r << '\n';
  o.csv = csv.str();
  o.text = io::to_text(t) + "total rank " + std::to_string(t.total_rank) + "\njones " + graded_euler(t).to_string() + '\n';
}

void run_dinv(const LinkDiagram& d, const Options& opt, Output& o) {
  const BlackGraph g = black_graph(d);
  const GoeritzLattice lat = build_lattice(g, opt.tree_seed);
  const DTable t = d_table(lat.Q);
  o.j = io::to_json(t);
  o.j["name"] = d.name();
  o.csv = io::to_csv(t, d.name());
  o.text = io::to_text(t);
}

void run_bounds(const LinkDiagram& d0, const Options&, Output& o) {
  const LinkDiagram d = marked(d0);
  const BigInt det = link_determinant(d);
  const std::size_t kh = khovanov_homology(d, true).total_rank;
  const bool collapsed = det == kh;
  o.j = {{"name", d.name()},
         {"det", io::big(det)},
         {"kh_rank", kh},
         {"collapsed", collapsed},
         {"certified", "det <= rk HF^(double cover; F2) <= rk Kh_red (F2); HF^ itself is not computed"},
         {"strict_gap", !collapsed},
         {"conventions_version", conventions::conventions_version()}};
  o.csv = d.name() + ',' + big_str(det) + ',' + std::to_string(kh) + ',' + (collapsed ? "true" : "false") + '\n';
  o.text = "det " + big_str(det) + " <= rk HF^ <= rk Kh_red " + std::to_string(kh) +
           (collapsed ? "  (equal: the bounds collapse)\n" : "  (strict gap between the end terms)\n");
}

void run_qa(const LinkDiagram& d, const Options& opt, Output& o) {
  const QAResult r = qa_certify(d, parse_budget(opt.budget));
  o.j = io::to_json(r);
  o.j["name"] = d.name();
  std::string first;
  if (r.certificate && !r.certificate->is_leaf())
    first = big_str(r.certificate->children[0]->det) + ',' + big_str(r.certificate->children[1]->det);
  else
    first = ",";
  o.csv = d.name() + ',' + (r.certified() ? "certified" : "unknown") + ',' + big_str(r.root_det) + ',' + first + ',' +
          std::to_string(r.nodes_explored) + '\n';
  o.text = "root det " + big_str(r.root_det) + "\n" + io::to_text(r);
}

void run_ss(const LinkDiagram& d0, const Options& opt, Output& o) {
  const LinkDiagram d = opt.reduced ? marked(d0) : d0;
  const BigradedComplex c = assemble(d, opt.reduced);
  const PageTable t = spectral_pages(flatten_cube_summands(c), opt.r_max);
  o.j = io::to_json(t);
  o.j["name"] = d.name();
  o.j["reduced"] = opt.reduced;
  o.j["conventions_version"] = conventions::conventions_version();
  std::ostringstream csv, text;
  for (int r = 1; r <= t.pages(); ++r)
    for (std::size_t p = 0; p < t.ranks[static_cast<std::size_t>(r - 1)].size(); ++p)
      csv << d.name() << ',' << r << ',' << p << ',' << t.ranks[static_cast<std::size_t>(r - 1)][p] << '\n';
  for (int r = 1; r <= t.pages(); ++r) {
    text << "E" << r << ":";
    for (auto k : t.ranks[static_cast<std::size_t>(r - 1)]) text << ' ' << k;
    text << "  (total " << t.total(r) << ")\n";
  }
  text << "stable from E" << t.stable_page << ", total homology rank " << t.total_homology_rank << '\n';
  o.csv = csv.str();
  o.text = text.str();
}

void run_det(const LinkDiagram& d, const Options& opt, Output& o) {
  const BigInt det = link_determinant(d);
  const bool alt = is_connected(d) && is_alternating(d);
  std::optional<BigInt> trees;
  if (alt) trees = det_matrix_tree(black_graph(d));
  std::optional<std::int64_t> jdet;
  if (d.size() <= kOracleMaxCrossings) jdet = jones_determinant(d);
  o.j = {{"name", d.name()},
         {"det", io::big(det)},
         {"tree_count", trees ? io::big(*trees) : json(nullptr)},
         {"jones_det", jdet ? json(*jdet) : json(nullptr)},
         {"alternating", alt},
         {"conventions_version", conventions::conventions_version()}};
  o.csv = d.name() + ',' + big_str(det) + ',' + (trees ? big_str(*trees) : "") + ',' +
          (jdet ? std::to_string(*jdet) : "") + ',' + (alt ? "true" : "false") + '\n';
  o.text = "det " + big_str(det) + (trees ? ", spanning trees " + big_str(*trees) : "") +
           (jdet ? ", |J(i)| " + std::to_string(*jdet) : "") + '\n';
  if (opt.lattice) {
    const BlackGraph g = black_graph(d);
    const GoeritzLattice lat = build_lattice(g, opt.tree_seed);
    o.j["lattice"] = io::to_json(g, lat, det);
    o.csv = io::to_csv(lat.Q);
    o.text += "Q =\n" + io::to_csv(lat.Q);
  }
}

std::string csv_header(const Options& opt) {
  if (opt.command == "kh") return "name,m,q,rank";
  if (opt.command == "dinv") return "name,label_i,label_j,d";
  if (opt.command == "bounds") return "name,det,kh_rank,collapsed";
  if (opt.command == "qa") return "name,status,root_det,det0,det1,nodes";
  if (opt.command == "ss") return "name,r,level,rank";
  if (opt.lattice) return "";
  return "name,det,tree_count,jones_det,alternating";
}

Output process(const fs::path& path, const Options& opt) {
  Output o;
  o.name = path.stem().string();
  try {
    const LinkDiagram d = load(path, opt);
    if (opt.command == "kh") run_kh(d, opt, o);
    else if (opt.command == "dinv") run_dinv(d, opt, o);
    else if (opt.command == "bounds") run_bounds(d, opt, o);
    else if (opt.command == "qa") run_qa(d, opt, o);
    else if (opt.command == "ss") run_ss(d, opt, o);
    else run_det(d, opt, o);
  } catch (const Error& e) {
    o.code = exit_code(e.kind());
    o.error = e.what();
  } catch (const std::bad_alloc&) {
    o.code = 3;
    o.error = "BudgetExceeded: out of memory";
  }
  return o;
}

int run(const Options& opt) {
  set_thread_count(opt.threads);
  const auto paths = expand_inputs(opt.inputs);
  if (paths.empty()) {
    std::cerr << "khcover: no input files\n";
    return 2;
  }
  std::vector<Output> outs(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) { outs[i] = process(paths[i], opt); });

  int code = 0;
  for (std::size_t i = 0; i < outs.size(); ++i)
    if (outs[i].code) {
      std::cerr << "khcover: " << paths[i].string() << ": " << outs[i].error << '\n';
      if (!code) code = outs[i].code;
    }

  if (opt.format == "json") {
    json all = json::array();
    for (auto& o : outs) {
      if (o.code)
        all.push_back({{"name", o.name}, {"error", o.error}, {"exit_code", o.code}});
      else
        all.push_back(o.j);
    }
    std::cout << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  } else if (opt.format == "csv") {
    if (auto h = csv_header(opt); !h.empty()) std::cout << h << '\n';
    for (auto& o : outs)
      if (!o.code) std::cout << o.csv;
  } else {
    for (auto& o : outs) {
      if (o.code) continue;
      if (outs.size() > 1) std::cout << "== " << o.name << " ==\n";
      std::cout << o.text;
    }
    std::cout << "conventions " << conventions::conventions_version() << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology, determinants, d-invariants and quasi-alternating certificates of links"};
  app.require_subcommand(1);
  app.set_version_flag("--version", conventions::conventions_version());
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    sub->add_option("--mark", opt.mark, "Marked arc for reduced homology");
    sub->add_flag("--mirror", opt.mirror, "Mirror the diagram first");
    sub->add_option("--reverse", opt.reverse, "Reverse the orientation of these components (0-based)");
    sub->add_option("inputs", opt.inputs, "PD files or directories of *.pd files")->required();
  };
  auto flavor = [&](CLI::App* sub) {
    auto* r = sub->add_flag("--reduced", opt.reduced, "Reduced complex");
    sub->add_flag("--unreduced{false}", opt.reduced, "Unreduced complex (default)")->excludes(r);
  };

  auto* kh = app.add_subcommand("kh", "Khovanov homology over F2 and the Jones polynomial");
  common(kh);
  flavor(kh);
  auto* dinv = app.add_subcommand("dinv", "d-invariants of the branched double cover (alternating input)");
  common(dinv);
  dinv->add_option("--tree-seed", opt.tree_seed, "Spanning-tree seed (-1 = breadth-first tree)");
  auto* bounds = app.add_subcommand("bounds", "det <= rk HF^ <= rk Kh_red report");
  common(bounds);
  auto* qa = app.add_subcommand("qa", "Search for a quasi-alternating certificate");
  common(qa);
  qa->add_option("--budget", opt.budget, "Node count, or wall time such as 10s");
  auto* ss = app.add_subcommand("ss", "Pages of the cube-filtration spectral sequence");
  common(ss);
  flavor(ss);
  ss->add_option("--r-max", opt.r_max, "Last page to compute (0 = until stable)");
  auto* det = app.add_subcommand("det", "Determinant by three independent routes");
  common(det);
  det->add_flag("--lattice", opt.lattice, "Emit the black graph, tree and Goeritz form");
  det->add_option("--tree-seed", opt.tree_seed, "Spanning-tree seed (-1 = breadth-first tree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();
  return run(opt);
}
