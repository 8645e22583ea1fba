#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "omlkit/born.hpp"
#include "omlkit/kalmbach.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/peres.hpp"
#include "omlkit/polytope.hpp"
#include "omlkit/states.hpp"

namespace omlkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParse = 2;

namespace detail {

inline std::string slurp(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") {
    std::ostringstream ss;
    ss << stdin_stream.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline double default_tolerance() {
  if (const char* env = std::getenv("OMLKIT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end && *end == '\0' && v > 0) return v;
    throw ParseError("OMLKIT_TOL must be a positive number");
  }
  return CMatrix::kDefaultTol;
}

inline void print_law(std::ostream& out, const char* name, const Lattice::LawReport& r) {
  out << name << ": " << (r.holds ? "true" : "false");
  if (!r.holds) {
    out << "  witness: (";
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
      if (i) out << ", ";
      out << r.witness[i];
    }
    out << ")";
  }
  out << "\n";
}

inline nlohmann::json law_json(const Lattice::LawReport& r) {
  nlohmann::json j;
  j["holds"] = r.holds;
  if (!r.holds) j["witness"] = r.witness;
  return j;
}

}  // namespace detail

struct Invocation {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

inline int run_lattice_mo(int n, const std::string& format, const Invocation& io) {
  Lattice l = Lattice::mo(n);
  if (format == "json") {
    io.out << l.to_json().dump(2) << "\n";
  } else if (format == "dot") {
    io.out << l.hasse_dot();
  } else {
    io.out << "MO_" << n << ": " << l.size() << " elements, " << l.atoms().size()
           << " atoms\n";
  }
  return kExitOk;
}

inline int run_lattice_check(const std::string& path, bool expect_pass,
                             std::size_t max_elements, const std::string& format,
                             const Invocation& io) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::slurp(path, io.in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  Lattice l = Lattice::from_json(j);
  bool lat = l.is_lattice();
  bool ortho = l.has_ortho() && l.is_ortholattice();
  Lattice::LawReport dist, mod, oml;
  bool laws_done = false;
  if (lat) {
    dist = l.distributive(max_elements);
    mod = l.modular(max_elements);
    if (l.has_ortho()) oml = l.orthomodular(max_elements);
    laws_done = true;
  }
  if (format == "json") {
    nlohmann::json o;
    o["format_version"] = 1;
    o["elements"] = l.size();
    o["lattice"] = lat;
    o["ortholattice"] = ortho;
    if (laws_done) {
      o["distributive"] = detail::law_json(dist);
      o["modular"] = detail::law_json(mod);
      if (l.has_ortho()) o["orthomodular"] = detail::law_json(oml);
    }
    io.out << o.dump(2) << "\n";
  } else {
    io.out << "elements: " << l.size() << "\n";
    io.out << "lattice: " << (lat ? "true" : "false") << "\n";
    io.out << "ortholattice: " << (ortho ? "true" : "false") << "\n";
    if (laws_done) {
      detail::print_law(io.out, "distributive", dist);
      detail::print_law(io.out, "modular", mod);
      if (l.has_ortho()) detail::print_law(io.out, "orthomodular", oml);
    }
  }
  if (expect_pass) {
    bool all = lat && (!l.has_ortho() || ortho) && (!laws_done || (dist.holds && mod.holds)) &&
               (!laws_done || !l.has_ortho() || oml.holds);
    if (!all) {
      io.err << "expectation 'pass' violated\n";
      return kExitDomain;
    }
  }
  return kExitOk;
}

inline int run_states(const std::string& path, const std::string& seed_atom,
                      const std::string& format, const Invocation& io) {
  std::istringstream text(detail::slurp(path, io.in));
  GreechieDiagram d = parse_greechie(text);
  std::vector<TwoValuedState> states =
      seed_atom.empty() ? enumerate_states(d) : symmetric_seed(d, seed_atom);
  StateClassification c;
  if (seed_atom.empty()) {
    c = classify(d);
  } else {
    c.count = states.size();
  }
  std::vector<int> order(d.atom_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d.atom_name(a) < d.atom_name(b); });
  if (format == "json") {
    nlohmann::json j = states_to_json(d, states);
    if (seed_atom.empty()) j["classification"] = c.to_json();
    else j["seed_atom"] = seed_atom;
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "atoms: " << d.atom_count() << "\n";
    io.out << "contexts: " << d.context_count() << "\n";
    if (!seed_atom.empty()) io.out << "seed atom: " << seed_atom << "\n";
    io.out << "states: " << states.size() << "\n";
    if (seed_atom.empty())
      io.out << "unital: " << (c.unital ? "true" : "false") << "\n"
             << "separating: " << (c.separating ? "true" : "false") << "\n"
             << "full: " << (c.full ? "true" : "false") << "\n";
    for (const auto& s : states) {
      io.out << "state:";
      for (int a : order) io.out << " " << d.atom_name(a) << "=" << int(s.bits[a]);
      io.out << "\n";
    }
  }
  return kExitOk;
}

inline int run_ks_peres(const std::string& format, const Invocation& io) {
  std::vector<Ray> gen = peres_rays();
  std::vector<Ray> closed = ortho_closure(gen);
  std::set<Ray> gen_set(gen.begin(), gen.end());
  std::vector<Ray> added;
  for (const Ray& r : closed)
    if (!gen_set.count(r)) added.push_back(r);
  GreechieDiagram d = ray_contexts(closed);
  auto hist = context_size_histogram(d);
  std::size_t poset_elements = orthoposet_element_count(closed);
  std::vector<TwoValuedState> states = enumerate_states(d);
  auto families = family_histogram(added);

  if (format == "dot") {
    io.out << greechie_dot(d);
    return kExitOk;
  }
  if (format == "json") {
    nlohmann::json j;
    j["format_version"] = 1;
    j["generator_rays"] = gen.size();
    j["closure_rays"] = closed.size();
    j["added_rays"] = added.size();
    nlohmann::json fam = nlohmann::json::object();
    for (const auto& [k, v] : families) fam[k] = v;
    j["added_families"] = fam;
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& [k, v] : hist) sizes[std::to_string(k)] = v;
    j["context_sizes"] = sizes;
    j["contexts"] = d.context_count();
    j["orthoposet_elements"] = poset_elements;
    j["two_valued_states"] = states.size();
    j["rays"] = nlohmann::json::array();
    for (const Ray& r : closed) j["rays"].push_back(r.name());
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "generator rays: " << gen.size() << "\n";
    io.out << "closure rays: " << closed.size() << "\n";
    io.out << "added rays: " << added.size() << "\n";
    for (const auto& [k, v] : families)
      io.out << "added family " << k << ": " << v << "\n";
    io.out << "contexts: " << d.context_count() << "\n";
    for (const auto& [k, v] : hist)
      io.out << "contexts of size " << k << ": " << v << "\n";
    io.out << "orthoposet elements: " << poset_elements << "\n";
    io.out << "two-valued states: " << states.size() << "\n";
    io.out << "verdict: "
           << (states.empty() ? "no two-valued probability measure"
                              : "two-valued states exist")
           << "\n";
  }
  return kExitOk;
}

inline int run_rays_closure(const std::string& path, std::size_t cap,
                            const std::string& format, const Invocation& io) {
  std::istringstream text(detail::slurp(path, io.in));
  std::vector<Ray> input = parse_rays(text);
  std::vector<Ray> closed = ortho_closure(input, cap);
  if (format == "greechie") {
    emit_greechie(ray_contexts(closed), io.out);
  } else if (format == "dot") {
    io.out << greechie_dot(ray_contexts(closed));
  } else if (format == "json") {
    nlohmann::json j;
    j["format_version"] = 1;
    j["input_rays"] = input.size();
    j["closure_rays"] = closed.size();
    j["rays"] = nlohmann::json::array();
    for (const Ray& r : closed) j["rays"].push_back(r.name());
    io.out << j.dump(2) << "\n";
  } else {
    emit_rays(closed, io.out);
    io.err << "closure: " << input.size() << " -> " << closed.size() << " rays\n";
  }
  return kExitOk;
}

inline int run_kalmbach(const std::string& path, const std::string& format,
                        const Invocation& io) {
  std::istringstream text(detail::slurp(path, io.in));
  SetPoset p = parse_set_poset(text);
  EmbeddingMap m = kalmbach_embedding(p);
  EmbeddingReport rep = verify_embedding(m);
  StateClassification c = classify(m.target.to_greechie());
  auto chains = maximal_chains(p);
  if (format == "dot") {
    io.out << m.target.hasse_dot();
    return kExitOk;
  }
  if (format == "json") {
    nlohmann::json j;
    j["format_version"] = 1;
    j["source_elements"] = p.size();
    j["maximal_chains"] = chains.size();
    j["lattice"] = m.target.to_json();
    nlohmann::json phi = nlohmann::json::object();
    for (std::size_t x = 0; x < p.size(); ++x)
      phi[p.label(static_cast<int>(x))] = m.target.label(m.map[x]);
    j["embedding"] = phi;
    j["embedding_ok"] = rep.ok();
    j["classification"] = c.to_json();
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "source elements: " << p.size() << "\n";
    io.out << "maximal chains: " << chains.size() << "\n";
    for (const auto& ch : chains) {
      io.out << "chain:";
      for (int x : ch) io.out << " " << p.label(x);
      io.out << "\n";
    }
    io.out << "pasted elements: " << m.target.size() << "\n";
    io.out << "embedding: injective=" << (rep.injective ? "true" : "false")
           << " order=" << (rep.order_ok ? "true" : "false")
           << " meets=" << (rep.meets_ok ? "true" : "false")
           << " joins=" << (rep.joins_ok ? "true" : "false") << "\n";
    for (const auto& f : rep.failures) io.out << "  failure: " << f << "\n";
    io.out << "states: " << c.count << " (unital=" << (c.unital ? "true" : "false")
           << ", separating=" << (c.separating ? "true" : "false") << ")\n";
    for (std::size_t x = 0; x < p.size(); ++x)
      io.out << "phi " << p.label(static_cast<int>(x)) << " -> "
             << m.target.label(m.map[x]) << "\n";
  }
  return rep.ok() ? kExitOk : kExitDomain;
}

inline int run_polytope_facets(const std::string& path, const std::string& format,
                               const Invocation& io) {
  std::istringstream text(detail::slurp(path, io.in));
  EventScheme s = parse_scheme(text);
  std::vector<RVec> verts = vertices(s);
  PolytopeH h = facets(verts);
  if (format == "json") {
    nlohmann::json j = h.to_json();
    j["vertices"] = verts.size();
    io.out << j.dump(2) << "\n";
  } else {
    for (const auto& q : h.equalities) io.out << q.str() << "\n";
    for (const auto& q : h.inequalities) io.out << q.str() << "\n";
  }
  return kExitOk;
}

inline int run_polytope_member(const std::string& path, const std::string& vector_text,
                               const std::string& format, const Invocation& io) {
  std::istringstream text(detail::slurp(path, io.in));
  EventScheme s = parse_scheme(text);
  RVec p = parse_rational_vector(vector_text);
  if (p.size() != s.dim())
    throw ParseError("vector has " + std::to_string(p.size()) + " components, scheme has " +
                     std::to_string(s.dim()) + " terms");
  ClassicalityCertificate cert = is_classical(p, s);
  std::vector<RVec> verts = vertices(s);
  if (format == "json") {
    nlohmann::json j;
    j["format_version"] = 1;
    j["classical"] = cert.classical;
    if (cert.classical) {
      nlohmann::json w = nlohmann::json::array();
      for (const auto& [idx, wt] : cert.weights) {
        nlohmann::json row;
        nlohmann::json v = nlohmann::json::array();
        for (const Rat& x : verts[idx]) v.push_back(rat_str(x));
        row["vertex"] = v;
        row["weight"] = rat_str(wt);
        w.push_back(row);
      }
      j["weights"] = w;
    } else {
      j["violated"] = {{"coeffs", nlohmann::json::array()}, {"bound", cert.violated->bound.str()}};
      for (const auto& c : cert.violated->coeffs) j["violated"]["coeffs"].push_back(c.str());
    }
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "classical: " << (cert.classical ? "true" : "false") << "\n";
    if (cert.classical) {
      for (const auto& [idx, wt] : cert.weights) {
        io.out << "weight (";
        for (std::size_t i = 0; i < verts[idx].size(); ++i) {
          if (i) io.out << ",";
          io.out << rat_str(verts[idx][i]);
        }
        io.out << "): " << rat_str(wt) << "\n";
      }
    } else {
      io.out << "violated: " << cert.violated->str() << "\n";
    }
  }
  return kExitOk;
}

inline int run_born_ur(double a, double b, double c, double tol, const std::string& format,
                       const Invocation& io) {
  CMatrix u = ur_operator(a, b, c, tol);
  CMatrix ubar = rotated_ur(a, b, c, tol);
  auto js = reconstruct_j_squared(u, a, b, c);
  auto axis = j_squared(tol);
  std::vector<double> ev = u.eigenvalues();
  std::vector<double> evbar = ubar.eigenvalues();
  CMatrix sum = js[0] + js[1] + js[2];
  bool recon_ok = true;
  for (int k = 0; k < 3; ++k) {
    recon_ok = recon_ok && js[k].is_projector() && js[k].max_abs_diff(axis[k]) <= tol;
  }
  recon_ok = recon_ok && sum.max_abs_diff(Complex(2, 0) * CMatrix::identity(3, tol)) <= tol;
  auto table = exclusivity_table(u, a, b, c);
  bool excl_ok = true;
  for (const auto& row : table) {
    int ones = 0, zeros = 0;
    for (double v : row) {
      if (std::abs(v - 1) <= 1e-6) ++ones;
      if (std::abs(v) <= 1e-6) ++zeros;
    }
    excl_ok = excl_ok && ones == 2 && zeros == 1;
  }
  if (format == "json") {
    nlohmann::json j;
    j["format_version"] = 1;
    j["a"] = a;
    j["b"] = b;
    j["c"] = c;
    j["tolerance"] = tol;
    j["ur"] = u.to_json();
    j["rotated_ur"] = ubar.to_json();
    j["eigenvalues"] = ev;
    j["rotated_eigenvalues"] = evbar;
    j["j_squared"] = {js[0].to_json(), js[1].to_json(), js[2].to_json()};
    j["reconstruction_ok"] = recon_ok;
    j["exclusivity_ok"] = excl_ok;
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "U:\n";
    for (int r = 0; r < 3; ++r) {
      for (int cc = 0; cc < 3; ++cc) {
        if (cc) io.out << " ";
        Complex z = u.at(r, cc);
        io.out << detail::fmt_double(z.real());
        if (z.imag() != 0) io.out << (z.imag() > 0 ? "+" : "") << detail::fmt_double(z.imag()) << "i";
      }
      io.out << "\n";
    }
    io.out << "eigenvalues:";
    for (double v : ev) io.out << " " << detail::fmt_double(v);
    io.out << "\nrotated eigenvalues:";
    for (double v : evbar) io.out << " " << detail::fmt_double(v);
    io.out << "\nreconstruction: " << (recon_ok ? "ok" : "FAILED");
    io.out << "\nexclusivity: " << (excl_ok ? "ok" : "FAILED") << "\n";
  }
  return (recon_ok && excl_ok) ? kExitOk : kExitDomain;
}

/// Entry point shared by the binary and the tests. argv excludes the program
/// name. Returns the process exit code; diagnostics go to `err`, machine
/// output to `out`.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  Invocation io{in, out, err};
  CLI::App app{"omlkit: finite quantum-logic toolkit"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string path, vector_text, seed_atom;
  int mo_n = 0;
  std::size_t max_elements = Lattice::kDefaultLawCheckCap;
  std::size_t cap = 10000;
  double ua = 0, ub = 0, uc = 0;
  double tol = -1;

  auto* lattice = app.add_subcommand("lattice", "finite lattice operations");
  lattice->require_subcommand(1);
  auto* mo = lattice->add_subcommand("mo", "emit the Chinese-lantern lattice MO_n");
  mo->add_option("n", mo_n, "number of blocks")->required();
  std::string mo_format = "json";
  mo->add_option("--format", mo_format, "json|dot|text")
      ->check(CLI::IsMember({"json", "dot", "text"}));
  auto* check = lattice->add_subcommand("check", "validate a lattice and run the law checks");
  check->add_option("file", path, "lattice JSON file, - for stdin")->required();
  std::string expect_value;
  check->add_option("--expect", expect_value, "'pass' to exit 1 when any check fails")
      ->check(CLI::IsMember({"pass"}));
  check->add_option("--max-elements", max_elements, "law-check size cap override");
  check->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* states_cmd = app.add_subcommand("states", "enumerate two-valued states of a Greechie file");
  states_cmd->add_option("file", path, "Greechie text file, - for stdin")->required();
  states_cmd->add_option("--seed-atom", seed_atom, "restrict to states with this atom true");
  states_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* ks = app.add_subcommand("ks", "Kochen-Specker configurations");
  ks->require_subcommand(1);
  auto* peres = ks->add_subcommand("peres", "generate, close, and color the 33-ray set");
  peres->add_option("--format", format, "text|json|dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));

  auto* rays_cmd = app.add_subcommand("rays", "exact projective ray operations");
  rays_cmd->require_subcommand(1);
  auto* closure = rays_cmd->add_subcommand("closure", "orthogeneration closure of a ray file");
  closure->add_option("file", path, "ray file, - for stdin")->required();
  closure->add_option("--cap", cap, "closure growth cap");
  closure->add_option("--format", format, "text|json|greechie|dot")
      ->check(CLI::IsMember({"text", "json", "greechie", "dot"}));

  auto* kalmbach_cmd = app.add_subcommand("kalmbach", "pasted-chain embedding of a poset file");
  kalmbach_cmd->add_option("file", path, "poset file, - for stdin")->required();
  kalmbach_cmd->add_option("--format", format, "text|json|dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));

  auto* polytope_cmd = app.add_subcommand("polytope", "correlation polytopes");
  polytope_cmd->require_subcommand(1);
  auto* facets_cmd = polytope_cmd->add_subcommand("facets", "exact facet enumeration");
  facets_cmd->add_option("file", path, "scheme file, - for stdin")->required();
  facets_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  auto* member = polytope_cmd->add_subcommand("member", "exact classicality membership test");
  member->add_option("file", path, "scheme file, - for stdin")->required();
  member->add_option("vector", vector_text, "comma-separated rational probabilities")->required();
  member->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* born = app.add_subcommand("born", "trace-rule probabilities and maximal operators");
  born->require_subcommand(1);
  auto* ur = born->add_subcommand("ur", "build U = a J1^2 + b J2^2 + c J3^2 and verify it");
  ur->add_option("a", ua, "first coefficient")->required();
  ur->add_option("b", ub, "second coefficient")->required();
  ur->add_option("c", uc, "third coefficient")->required();
  ur->add_option("--tolerance", tol, "numeric tolerance (default OMLKIT_TOL or 1e-9)");
  ur->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (mo->parsed()) return run_lattice_mo(mo_n, mo_format, io);
    if (check->parsed())
      return run_lattice_check(path, expect_value == "pass", max_elements, format, io);
    if (states_cmd->parsed()) return run_states(path, seed_atom, format, io);
    if (peres->parsed()) return run_ks_peres(format, io);
    if (closure->parsed()) return run_rays_closure(path, cap, format, io);
    if (kalmbach_cmd->parsed()) return run_kalmbach(path, format, io);
    if (facets_cmd->parsed()) return run_polytope_facets(path, format, io);
    if (member->parsed()) return run_polytope_member(path, vector_text, format, io);
    if (ur->parsed()) {
      double t = tol > 0 ? tol : detail::default_tolerance();
      return run_born_ur(ua, ub, uc, t, format, io);
    }
    err << "no subcommand selected\n";
    return kExitParse;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace omlkit::cli
