#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "sosforge/builders.hpp"
#include "sosforge/compile.hpp"
#include "sosforge/formulas.hpp"
#include "sosforge/lasserre.hpp"
#include "sosforge/restriction.hpp"
#include "sosforge/symmetric.hpp"
#include "sosforge/transform.hpp"

namespace fs = std::filesystem;
using namespace sosforge;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Tracks files read and written so a manifest can be produced.
struct Run {
  std::vector<std::pair<std::string, std::string>> inputs, outputs;  // flag, path
  std::optional<std::uint64_t> seed;
  std::ostream* out = &std::cout;

  std::string input(const std::string& flag, const std::string& path) {
    inputs.emplace_back(flag, path);
    return read_file(path);
  }

  void output(const std::string& flag, const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
      *out << data;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << data;
    outputs.emplace_back(flag, path);
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::string measures_line(const ProofMeasures& m) {
  std::ostringstream os;
  os << "size=" << m.size << " width=" << m.width << " domain_width=" << m.domain_width
     << " tree_like=" << (m.tree_like ? 1 : 0) << " refutation=" << (m.refutation ? 1 : 0) << "\n";
  return os.str();
}

std::string sos_line(const SosMeasures& m) {
  std::ostringstream os;
  os << "degree=" << m.degree << " size=" << m.size << " domain_degree=" << m.domain_degree << "\n";
  return os.str();
}

json proof_measures_json(const ProofMeasures& m) {
  return {{"size", m.size},
          {"width", m.width},
          {"domain_width", m.domain_width},
          {"tree_like", m.tree_like},
          {"refutation", m.refutation}};
}

json sos_measures_json(const SosMeasures& m) {
  return {{"degree", m.degree}, {"size", m.size}, {"domain_degree", m.domain_degree}};
}

struct Options {
  std::string graph, in, out, cnf, proof, cert, xor_file, base, inner, witness, cnf_out, cert_out, system;
  std::string manifest, m_list;
  int k = 0, m = 0, n = 0, delta = 8, l = 0, lprime = 0, dmax = 4, max_iters = 200;
  long trials = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  bool keep_violating = false, prune = false;
};

void add_output(CLI::App* c, Options& o, bool required = false) {
  auto* opt = c->add_option("--out", o.out, "output file (stdout when omitted)");
  if (required) opt->required();
}

void add_seed(CLI::App* c, Options& o) { c->add_option("--seed", o.seed, "64-bit seed"); }

int dispatch(const std::vector<std::string>& args, std::ostream& out);

int reproduce(const std::string& path, std::ostream& out) {
  json m = json::parse(read_file(path));
  std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
  std::map<std::string, std::string> recorded;
  for (const auto& o : m.at("outputs")) recorded[o.at("path").get<std::string>()] = o.at("sha256");
  for (const auto& i : m.at("inputs")) {
    std::string p = i.at("path");
    if (!fs::exists(p) || sha256_hex(read_file(p)) != i.at("sha256").get<std::string>()) {
      out << "input changed: " << p << "\n";
      return 1;
    }
  }
  fs::path tmp = fs::temp_directory_path() / ("sosforge-reproduce-" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  std::map<std::string, std::string> redirected;
  std::vector<std::string> rerun;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--manifest" || a == "--seed") {
      ++i;
      continue;
    }
    rerun.push_back(a);
    if (i + 1 < argv.size() && recorded.count(argv[i + 1]) &&
        (a == "--out" || a == "--witness" || a == "--cnf-out" || a == "--cert-out")) {
      std::string fresh = (tmp / std::to_string(redirected.size())).string();
      redirected[argv[i + 1]] = fresh;
      rerun.push_back(fresh);
      ++i;
    }
  }
  if (!m.at("seed").is_null()) {
    rerun.push_back("--seed");
    rerun.push_back(std::to_string(m.at("seed").get<std::uint64_t>()));
  }
  std::ostringstream sink;
  int code = dispatch(rerun, sink);
  int result = 0;
  if (code != 0) {
    out << "rerun exited with " << code << "\n";
    result = 1;
  }
  for (const auto& [orig, fresh] : redirected) {
    std::string h = fs::exists(fresh) ? sha256_hex(read_file(fresh)) : "";
    if (h == recorded[orig]) {
      out << "match " << orig << "\n";
    } else {
      out << "mismatch " << orig << "\n";
      result = 1;
    }
  }
  fs::remove_all(tmp);
  return result;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"sosforge: resolution and sums-of-squares proof workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  Run run;
  run.out = &out;

  auto sub = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("--manifest", o.manifest, "write a run manifest");
    return c;
  };

  auto* gen_clique_cmd = sub("gen-clique", "k-clique formula of a graph as DIMACS");
  gen_clique_cmd->add_option("--graph", o.graph)->required();
  gen_clique_cmd->add_option("--k", o.k)->required();
  add_output(gen_clique_cmd, o);

  auto* gen_block_cmd = sub("gen-block", "block encoding of a partitioned graph");
  gen_block_cmd->add_option("--graph", o.graph)->required();
  gen_block_cmd->add_option("--k", o.k)->required();
  add_output(gen_block_cmd, o);

  auto* gen_xor_cmd = sub("gen-3xor", "random 3-XOR system");
  gen_xor_cmd->add_option("--n", o.n)->required();
  gen_xor_cmd->add_option("--delta", o.delta);
  add_seed(gen_xor_cmd, o);
  add_output(gen_xor_cmd, o);

  auto* gen_xg_cmd = sub("gen-xor-graph", "3-XOR graph with its partition");
  gen_xg_cmd->add_option("--xor", o.xor_file)->required();
  gen_xg_cmd->add_option("--k", o.k)->required();
  gen_xg_cmd->add_flag("--keep-violating", o.keep_violating);
  add_output(gen_xg_cmd, o);

  auto* gen_thr_cmd = sub("gen-threshold", "threshold formula");
  gen_thr_cmd->add_option("--k", o.k)->required();
  gen_thr_cmd->add_option("--m", o.m)->required();
  add_output(gen_thr_cmd, o);

  auto* rel_cmd = sub("relativize", "relativize a symmetric formula");
  rel_cmd->add_option("--in", o.in)->required();
  rel_cmd->add_option("--k", o.k)->required();
  rel_cmd->add_option("--m", o.m)->required();
  add_output(rel_cmd, o);

  auto* ref_clique_cmd = sub("refute-clique", "resolution refutation of a clique formula");
  ref_clique_cmd->add_option("--graph", o.graph)->required();
  ref_clique_cmd->add_option("--k", o.k)->required();
  ref_clique_cmd->add_flag("--prune", o.prune, "cut branches at the first conflicting pair");
  ref_clique_cmd->add_option("--cnf-out", o.cnf_out);
  add_output(ref_clique_cmd, o);

  auto* ref_bf_cmd = sub("refute-bruteforce", "refutation of the brute-force gadget");
  ref_bf_cmd->add_option("--k", o.k)->required();
  ref_bf_cmd->add_option("--m", o.m_list, "comma-separated sizes")->required();
  ref_bf_cmd->add_option("--cnf-out", o.cnf_out);
  add_output(ref_bf_cmd, o);

  auto* ref_thr_cmd = sub("refute-threshold", "refutation of the threshold formula plus all selector clauses");
  ref_thr_cmd->add_option("--k", o.k)->required();
  ref_thr_cmd->add_option("--m", o.m)->required();
  ref_thr_cmd->add_option("--cnf-out", o.cnf_out);
  add_output(ref_thr_cmd, o);

  auto* ref_rel_cmd = sub("refute-relativized", "refutation of a relativized formula");
  ref_rel_cmd->add_option("--base", o.base)->required();
  ref_rel_cmd->add_option("--inner", o.inner, "refutation of the base formula on domain k")->required();
  ref_rel_cmd->add_option("--k", o.k)->required();
  ref_rel_cmd->add_option("--m", o.m)->required();
  ref_rel_cmd->add_option("--cnf-out", o.cnf_out);
  add_output(ref_rel_cmd, o);

  auto* check_res_cmd = sub("check-res", "check a resolution trace");
  check_res_cmd->add_option("--cnf", o.cnf)->required();
  check_res_cmd->add_option("--proof", o.proof)->required();

  auto* compile_cmd = sub("compile-sos", "SOS certificate from a resolution refutation");
  compile_cmd->add_option("--cnf", o.cnf)->required();
  compile_cmd->add_option("--proof", o.proof)->required();
  add_output(compile_cmd, o);

  auto* check_sos_cmd = sub("check-sos", "check an SOS certificate exactly");
  check_sos_cmd->add_option("--cert", o.cert)->required();
  check_sos_cmd->add_option("--system", o.system, "constraint system replacing the embedded one");

  auto* tcb_cmd = sub("transform-clique-block", "clique-formula certificate to block encoding");
  tcb_cmd->add_option("--graph", o.graph)->required();
  tcb_cmd->add_option("--k", o.k)->required();
  tcb_cmd->add_option("--cert", o.cert)->required();
  add_output(tcb_cmd, o);

  auto* tbx_cmd = sub("transform-block-xor", "block certificate over a 3-XOR graph to the XOR encoding");
  tbx_cmd->add_option("--xor", o.xor_file)->required();
  tbx_cmd->add_option("--k", o.k)->required();
  tbx_cmd->add_option("--cert", o.cert)->required();
  tbx_cmd->add_flag("--keep-violating", o.keep_violating);
  add_output(tbx_cmd, o);

  auto* restrict_cmd = sub("restrict", "random restriction of a relativized formula");
  restrict_cmd->add_option("--in", o.in)->required();
  restrict_cmd->add_option("--base", o.base, "base formula to compare against");
  restrict_cmd->add_option("--witness", o.witness);
  add_seed(restrict_cmd, o);
  add_output(restrict_cmd, o);

  auto* shrink_cmd = sub("shrink", "monomial shrinkage experiment");
  shrink_cmd->add_option("--m", o.m)->required();
  shrink_cmd->add_option("--k", o.k)->required();
  shrink_cmd->add_option("--l", o.l)->required();
  shrink_cmd->add_option("--lprime", o.lprime)->required();
  shrink_cmd->add_option("--trials", o.trials);
  add_seed(shrink_cmd, o);
  add_output(shrink_cmd, o);

  auto* search_cmd = sub("sos-search", "search for a low-degree SOS refutation");
  search_cmd->add_option("--in", o.in)->required();
  search_cmd->add_option("--dmax", o.dmax);
  search_cmd->add_option("--tol", o.tol);
  search_cmd->add_option("--max-iters", o.max_iters);
  search_cmd->add_option("--cert-out", o.cert_out);
  add_output(search_cmd, o);

  auto* measure_cmd = sub("measure", "measures of a proof or certificate without checking");
  measure_cmd->add_option("--cnf", o.cnf);
  measure_cmd->add_option("--proof", o.proof);
  measure_cmd->add_option("--cert", o.cert);

  auto* repro_cmd = app.add_subcommand("reproduce", "rerun a manifest and compare output hashes");
  repro_cmd->add_option("--manifest", o.manifest)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForHelp*>(&e) ? app.help() : std::string(kVersion) + "\n");
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  auto seeded = [&](CLI::App* c) {
    if (c->count("--seed") == 0)
      if (const char* env = std::getenv("SOSFORGE_SEED")) o.seed = std::stoull(env);
    run.seed = o.seed;
  };

  try {
    if (*repro_cmd) return reproduce(o.manifest, out);

    if (*gen_clique_cmd) {
      Graph g = graph_from_json(json::parse(run.input("--graph", o.graph)));
      run.output("--out", o.out, write_dimacs(gen_clique(g, o.k)));
    } else if (*gen_block_cmd) {
      Graph g = graph_from_json(json::parse(run.input("--graph", o.graph)));
      run.output("--out", o.out, dump(system_to_json(gen_block(g, o.k))));
    } else if (*gen_xor_cmd) {
      seeded(gen_xor_cmd);
      run.output("--out", o.out, dump(xor_to_json(gen_random_3xor(o.n, o.delta, o.seed))));
    } else if (*gen_xg_cmd) {
      XorSystem s = xor_from_json(json::parse(run.input("--xor", o.xor_file)));
      run.output("--out", o.out, dump(graph_to_json(build_xor_graph(s, o.k, o.keep_violating).graph)));
    } else if (*gen_thr_cmd) {
      run.output("--out", o.out, write_dimacs(gen_threshold(o.k, o.m)));
    } else if (*rel_cmd) {
      CnfFormula f = read_dimacs(run.input("--in", o.in)).formula;
      run.output("--out", o.out, write_dimacs(relativize(f, o.k, o.m)));
    } else if (*ref_clique_cmd) {
      Graph g = graph_from_json(json::parse(run.input("--graph", o.graph)));
      CnfFormula f = gen_clique(g, o.k);
      ResolutionProof pi;
      try {
        pi = build_clique_refutation(g, o.k, o.prune);
      } catch (const CliqueExists& e) {
        std::string c;
        for (int v : e.clique) c += (c.empty() ? "" : ",") + g.vertices[v];
        throw CheckFailure(std::string("graph has a clique: ") + c);
      }
      if (!o.cnf_out.empty()) run.output("--cnf-out", o.cnf_out, write_dimacs(f));
      run.output("--out", o.out, write_trace(pi, f));
    } else if (*ref_bf_cmd) {
      std::vector<int> m = parse_int_list(o.m_list);
      CnfFormula f = gen_bruteforce_gadget(o.k, m);
      if (!o.cnf_out.empty()) run.output("--cnf-out", o.cnf_out, write_dimacs(f));
      run.output("--out", o.out, write_trace(build_bruteforce_refutation(o.k, m), f));
    } else if (*ref_thr_cmd) {
      CnfFormula f = threshold_closure_formula(o.k, o.m);
      if (!o.cnf_out.empty()) run.output("--cnf-out", o.cnf_out, write_dimacs(f));
      run.output("--out", o.out, write_trace(build_threshold_refutation(o.k, o.m), f));
    } else if (*ref_rel_cmd) {
      DimacsFile base = read_dimacs(run.input("--base", o.base));
      ResolutionProof inner = read_trace(run.input("--inner", o.inner), base);
      CnfFormula rel = relativize(base.formula, o.k, o.m);
      ResolutionProof pi = build_relativized_refutation(base.formula, o.k, o.m, inner);
      if (!o.cnf_out.empty()) run.output("--cnf-out", o.cnf_out, write_dimacs(rel));
      run.output("--out", o.out, write_trace(pi, rel));
    } else if (*check_res_cmd) {
      DimacsFile f = read_dimacs(run.input("--cnf", o.cnf));
      ResolutionProof pi = read_trace(run.input("--proof", o.proof), f);
      ProofMeasures m;
      try {
        m = check_proof(f.formula, pi);
      } catch (const ProofError& e) {
        throw CheckFailure(e.what());
      }
      out << measures_line(m);
    } else if (*compile_cmd) {
      DimacsFile f = read_dimacs(run.input("--cnf", o.cnf));
      ResolutionProof pi = read_trace(run.input("--proof", o.proof), f);
      SosCertificate cert;
      try {
        cert = compile_resolution(f.formula, pi);
      } catch (const ProofError& e) {
        throw CheckFailure(e.what());
      }
      run.output("--out", o.out, dump(certificate_to_json(encode_formula(f.formula), cert)));
    } else if (*check_sos_cmd) {
      auto [sys, cert] = certificate_from_json(json::parse(run.input("--cert", o.cert)));
      if (!o.system.empty()) sys = system_from_json(json::parse(run.input("--system", o.system)));
      try {
        out << sos_line(check_certificate(sys, cert));
      } catch (const CertificateError& e) {
        out << "rejected: " << e.what() << "\nresidual: " << to_text(e.residual) << "\n";
        throw CheckFailure("certificate rejected");
      }
    } else if (*tcb_cmd) {
      Graph g = graph_from_json(json::parse(run.input("--graph", o.graph)));
      auto [sys, cert] = certificate_from_json(json::parse(run.input("--cert", o.cert)));
      Transformed t;
      try {
        t = clique_to_block(g, o.k, sys, cert);
      } catch (const TransformError& e) {
        throw CheckFailure(e.what());
      }
      run.output("--out", o.out, dump(certificate_to_json(t.system, t.certificate)));
    } else if (*tbx_cmd) {
      XorSystem s = xor_from_json(json::parse(run.input("--xor", o.xor_file)));
      auto [sys, cert] = certificate_from_json(json::parse(run.input("--cert", o.cert)));
      XorGraph xg = build_xor_graph(s, o.k, o.keep_violating);
      Transformed t;
      try {
        t = block_to_xor(s, xg, sys, cert);
      } catch (const TransformError& e) {
        throw CheckFailure(e.what());
      }
      run.output("--out", o.out, dump(certificate_to_json(t.system, t.certificate)));
    } else if (*restrict_cmd) {
      seeded(restrict_cmd);
      CnfFormula rel = read_dimacs(run.input("--in", o.in)).formula;
      Restriction r = sample_restriction(rel, o.seed);
      const CnfFormula applied = apply_restriction(rel, r);
      CnfFormula base_k;
      if (!o.base.empty()) {
        CnfFormula base = read_dimacs(run.input("--base", o.base)).formula;
        base_k = generalize_domain(symmetric_template(base), r.k);
      } else {
        // Without a reference formula, compare against the renamed restriction itself.
        std::map<int, int> ren;
        for (std::size_t i = 0; i < r.survivors.size(); ++i) ren[r.survivors[i]] = static_cast<int>(i) + 1;
        for (const auto& c : applied.clauses()) base_k.add(rename_clause(c, ren));
      }
      Recovery rec = check_recovers_base(rel, r, base_k);
      CnfFormula restricted;
      for (const auto& c : applied.clauses()) restricted.add(rename_clause(c, rec.renaming));
      restricted.domain_size = r.k;
      for (const auto& [key, value] : rel.meta)
        if (key.rfind("base_", 0) == 0) restricted.meta[key.substr(5)] = value;
      json w = {{"restriction", restriction_to_json(r)}, {"recovery", recovery_to_json(rec)}};
      if (!o.witness.empty()) run.output("--witness", o.witness, dump(w));
      run.output("--out", o.out, write_dimacs(restricted));
      if (!rec.ok) throw CheckFailure("restriction does not recover the base formula");
    } else if (*shrink_cmd) {
      seeded(shrink_cmd);
      ShrinkageReport rep;
      try {
        rep = shrinkage_experiment(o.m, o.k, o.l, o.lprime, o.trials, o.seed);
      } catch (const ParameterError& e) {
        throw UsageError(e.what());
      }
      run.output("--out", o.out, dump(shrinkage_to_json(rep)));
    } else if (*search_cmd) {
      ConstraintSystem sys = system_from_json(json::parse(run.input("--in", o.in)));
      SdpOptions opt;
      opt.tol_eq = opt.tol_psd = o.tol;
      opt.max_iters = o.max_iters;
      DegreeSearch ds = min_degree(sys, o.dmax, opt);
      json rep;
      rep["min_degree"] = ds.degree ? json(*ds.degree) : json();
      rep["not_found_below"] = ds.degree ? json() : json(o.dmax);
      rep["exact"] = ds.exact;
      rep["outcomes"] = json::array();
      for (const auto& oc : ds.outcomes) rep["outcomes"].push_back(outcome_to_json(oc, build_coefficient_system(sys, oc.degree)));
      if (ds.certificate && !o.cert_out.empty())
        run.output("--cert-out", o.cert_out, dump(certificate_to_json(sys, *ds.certificate)));
      run.output("--out", o.out, dump(rep));
    } else if (*measure_cmd) {
      if (!o.cert.empty()) {
        auto [sys, cert] = certificate_from_json(json::parse(run.input("--cert", o.cert)));
        out << dump(sos_measures_json(measure_certificate(sys, cert)));
      } else if (!o.cnf.empty() && !o.proof.empty()) {
        DimacsFile f = read_dimacs(run.input("--cnf", o.cnf));
        out << dump(proof_measures_json(measure_proof(read_trace(run.input("--proof", o.proof), f))));
      } else {
        throw UsageError("measure needs --cert or both --cnf and --proof");
      }
    }
  } catch (const CheckFailure& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (!o.manifest.empty()) {
    json m;
    m["tool"] = "sosforge";
    m["version"] = kVersion;
    m["command"] = app.get_subcommands().front()->get_name();
    m["argv"] = args;
    m["seed"] = run.seed ? json(*run.seed) : json();
    m["inputs"] = json::array();
    for (const auto& [flag, path] : run.inputs)
      m["inputs"].push_back({{"flag", flag}, {"path", path}, {"sha256", sha256_hex(read_file(path))}});
    m["outputs"] = json::array();
    for (const auto& [flag, path] : run.outputs)
      m["outputs"].push_back({{"flag", flag}, {"path", path}, {"sha256", sha256_hex(read_file(path))}});
    m["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream f(o.manifest);
    f << m.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout);
}
