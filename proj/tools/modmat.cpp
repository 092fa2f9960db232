// Command-line front end for the modmat library.
//
// Exit codes: 0 accepted, 1 rejected (or validators disagree, or an
// experiment found counterexamples), 2 malformed input, 3 resource cap.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modmat/modmat.hpp"

namespace {

using modmat::io::json;

enum Exit { ok = 0, rejected = 1, malformed = 2, resource = 3 };

std::size_t union_cap() {
  if (const char* env = std::getenv("MODMAT_UNION_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw modmat::Error(modmat::Errc::bad_parameters, "MODMAT_UNION_CAP must be a positive integer");
    }
  }
  return modmat::UnionLattice::default_member_cap;
}

void print(const json& doc) { std::cout << doc.dump(2) << "\n"; }

json verdict_json(const modmat::GroundSet& g, const modmat::Verdict& v) {
  json out = {{"accepted", v.accepted}};
  if (v.witness) out["witness"] = modmat::io::witness_to_json(g, *v.witness);
  return out;
}

// Runs one or two validators and reports; with two, disagreement is an error.
int report(const std::string& mode, const std::string& first_name, const std::string& second_name,
           const std::function<modmat::Verdict()>& first, const std::function<modmat::Verdict()>& second,
           const modmat::GroundSet& g, const json& family_doc, bool witness_only) {
  std::vector<std::pair<std::string, modmat::Verdict>> runs;
  if (mode == first_name || mode == "both") runs.emplace_back(first_name, first());
  if (mode == second_name || mode == "both") runs.emplace_back(second_name, second());
  const bool all_accepted = std::all_of(runs.begin(), runs.end(), [](const auto& r) { return r.second.accepted; });
  const bool agree = std::all_of(runs.begin(), runs.end(),
                                 [&](const auto& r) { return r.second.accepted == runs.front().second.accepted; });
  if (witness_only) {
    for (const auto& [name, v] : runs) {
      if (!v.accepted) {
        print(modmat::io::witness_document(family_doc, g, v));
        break;
      }
    }
    if (all_accepted) print(family_doc);
  } else {
    json out = json::object();
    for (const auto& [name, v] : runs) out[name] = verdict_json(g, v);
    if (runs.size() > 1) out["agree"] = agree;
    print(out);
  }
  if (!agree) std::cerr << "validators disagree\n";
  return all_accepted && agree ? ok : rejected;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

modmat::SubsetMask parse_set(const modmat::GroundSet& g, const std::string& s) {
  modmat::SubsetMask m;
  for (const auto& name : split(s, ',')) {
    auto e = g.index_of(name);
    if (!e) throw modmat::Error(modmat::Errc::malformed_input, "unknown element '" + name + "'");
    m = m.with(*e);
  }
  return m;
}

// "1,0,1;0,1,1" -> rows
modmat::IntMatrix parse_matrix(const std::string& s) {
  std::vector<std::vector<std::int64_t>> rows;
  try {
    for (const auto& row : split(s, ';')) {
      rows.emplace_back();
      for (const auto& v : split(row, ',')) rows.back().push_back(std::stoll(v));
    }
  } catch (const std::exception&) {
    throw modmat::Error(modmat::Errc::malformed_input, "matrix entries must be integers");
  }
  return modmat::IntMatrix::from_rows(rows);
}

// "0-1,1-2,2-0" -> edges; vertices inferred
modmat::GraphSpec parse_edges(const std::string& s) {
  modmat::GraphSpec g;
  try {
    for (const auto& e : split(s, ',')) {
      const auto dash = e.find('-');
      if (dash == std::string::npos) throw std::invalid_argument(e);
      const std::size_t u = std::stoull(e.substr(0, dash));
      const std::size_t v = std::stoull(e.substr(dash + 1));
      g.edges.emplace_back(u, v);
      g.vertices = std::max({g.vertices, u + 1, v + 1});
    }
  } catch (const std::exception&) {
    throw modmat::Error(modmat::Errc::malformed_input, "edges are written u-v, separated by commas");
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify matroid and oriented matroid axiom systems."};
  app.require_subcommand(1);

  std::string file;
  std::string circuits_mode, flats_mode, signed_mode, lattice_mode;
  bool witness = false;
  bool no_complete = false;

  auto* check = app.add_subcommand("check", "Validate a family")->require_subcommand(1);
  auto* check_circuits = check->add_subcommand("circuits", "Circuit axioms");
  auto* check_flats = check->add_subcommand("flats", "Flat axioms");
  auto* check_signed = check->add_subcommand("signed", "Signed circuit axioms");
  auto* check_lattice = check->add_subcommand("lattice", "Geometric lattice test");
  for (auto* sub : {check_circuits, check_flats, check_signed, check_lattice}) {
    sub->add_option("file", file, "JSON input")->required();
    sub->add_flag("--witness", witness, "Print the input with its rejection witness attached");
  }
  check_circuits->add_option("--mode", circuits_mode, "modular|full|both")
      ->default_val("modular")
      ->check(CLI::IsMember({"modular", "full", "both"}));
  check_flats->add_option("--mode", flats_mode, "restricted|full|both")
      ->default_val("restricted")
      ->check(CLI::IsMember({"restricted", "full", "both"}));
  check_signed->add_option("--mode", signed_mode, "modular|classic|both")
      ->default_val("modular")
      ->check(CLI::IsMember({"modular", "classic", "both"}));
  check_signed->add_flag("--no-complete", no_complete, "Do not add missing negatives");
  check_lattice->add_option("--mode", lattice_mode, "direct|atoms|both")
      ->default_val("direct")
      ->check(CLI::IsMember({"direct", "atoms", "both"}));

  std::string set_arg;
  bool fixpoint = false;
  auto* derive = app.add_subcommand("derive", "Derive one description from another")->require_subcommand(1);
  auto* derive_flats = derive->add_subcommand("flats", "Flats of a circuit family");
  auto* derive_closure = derive->add_subcommand("closure", "Closure of a set");
  auto* derive_dual = derive->add_subcommand("dual", "Circuits of the dual matroid");
  auto* derive_coatom = derive->add_subcommand("coatom-circuits", "Complements of the coatoms of a flat family");
  for (auto* sub : {derive_flats, derive_closure, derive_dual, derive_coatom}) {
    sub->add_option("file", file, "JSON input")->required();
  }
  derive_closure->add_option("--set", set_arg, "Elements, comma separated")->required();
  derive_closure->add_flag("--fixpoint", fixpoint, "Iterate to a fixpoint");

  auto* pairs = app.add_subcommand("modular-pairs", "List modular pairs of circuits");
  pairs->add_option("file", file, "Circuit file")->required();

  unsigned rank_arg = 0;
  unsigned size_arg = 0;
  unsigned complete_arg = 0;
  std::string edges_arg;
  std::string matrix_arg;
  bool signed_out = false;
  auto* gen = app.add_subcommand("gen", "Generate a matroid")->require_subcommand(1);
  auto* gen_uniform = gen->add_subcommand("uniform", "U(r,n)");
  gen_uniform->add_option("--rank,-r", rank_arg)->required();
  gen_uniform->add_option("--size,-n", size_arg)->required();
  auto* gen_graphic = gen->add_subcommand("graphic", "Cycle matroid of a graph");
  auto* complete_opt = gen_graphic->add_option("--complete", complete_arg, "Complete graph on k vertices");
  auto* edges_opt = gen_graphic->add_option("--edges", edges_arg, "Edges as u-v,u-v,...");
  complete_opt->excludes(edges_opt);
  gen_graphic->add_flag("--signed", signed_out, "Emit signed cycles");
  gen->add_subcommand("fano", "The Fano plane");
  auto* gen_vector = gen->add_subcommand("vector", "Column matroid of an integer matrix");
  gen_vector->add_option("--matrix", matrix_arg, "Rows separated by ';', entries by ','")->required();
  gen_vector->add_flag("--signed", signed_out, "Emit signed circuits");

  std::string kind;
  unsigned n_arg = 0;
  modmat::ExperimentOptions opt;
  std::optional<std::size_t> shard_arg;
  auto* verify = app.add_subcommand("verify", "Run a verification experiment");
  verify->add_option("kind", kind, "theorem-main|newcrapo|oriented-equiv|cryptomorphism")
      ->required()
      ->check(CLI::IsMember({"theorem-main", "newcrapo", "oriented-equiv", "cryptomorphism"}));
  verify->add_option("--n", n_arg, "Size parameter")->required();
  verify->add_option("--shards", opt.shards, "Number of shards")->default_val(1);
  verify->add_option("--shard", shard_arg, "Run only this shard");
  verify->add_option("--threads", opt.threads, "Worker threads (0: all cores)")->default_val(0);
  verify->add_option("--seed", opt.seed, "Seed for random instances")->default_val(1);
  verify->add_option("--count", opt.random_count, "Random instances")->default_val(100);
  verify->add_flag("--large", opt.allow_large, "Allow the large exhaustive sizes");

  auto* exp = app.add_subcommand("export", "Export a diagram")->require_subcommand(1);
  auto* exp_dot = exp->add_subcommand("dot", "Hasse diagram in DOT");
  exp_dot->add_option("file", file, "Circuit, flat or lattice file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : malformed;
  }

  try {
    if (check->parsed()) {
      const json doc = modmat::io::read_json_file(file);
      if (check_circuits->parsed()) {
        const auto fam = modmat::io::circuit_family_from_json(doc);
        return report(
            circuits_mode, "modular", "full", [&] { return modmat::check_circuits_modular(fam); },
            [&] { return modmat::check_circuits_full(fam); }, fam.ground(), doc, witness);
      }
      if (check_flats->parsed()) {
        const auto fam = modmat::io::flat_family_from_json(doc);
        return report(
            flats_mode, "restricted", "full", [&] { return modmat::check_flats_restricted(fam); },
            [&] { return modmat::check_flats_full(fam); }, fam.ground(), doc, witness);
      }
      if (check_signed->parsed()) {
        const auto fam = modmat::io::signed_family_from_json(doc, !no_complete);
        return report(
            signed_mode, "modular", "classic", [&] { return modmat::check_signed_modular(fam); },
            [&] { return modmat::check_signed_classic(fam); }, fam.ground(), doc, witness);
      }
      const auto lat = modmat::io::lattice_from_json(doc);
      return report(
          lattice_mode, "direct", "atoms", [&] { return modmat::check_geometric_lattice(lat); },
          [&] { return modmat::check_geometric_lattice_via_atom_sets(lat); }, modmat::GroundSet(0u), doc, witness);
    }

    if (derive->parsed()) {
      const json doc = modmat::io::read_json_file(file);
      if (derive_coatom->parsed()) {
        print(modmat::io::to_json(modmat::coatom_complement_circuits(modmat::io::flat_family_from_json(doc))));
        return ok;
      }
      const auto fam = modmat::io::circuit_family_from_json(doc);
      if (derive_flats->parsed()) print(modmat::io::to_json(modmat::flats_from_circuits(fam)));
      if (derive_dual->parsed()) print(modmat::io::to_json(modmat::dual_circuits(fam)));
      if (derive_closure->parsed()) {
        const auto a = parse_set(fam.ground(), set_arg);
        print({{"set", modmat::io::set_to_json(fam.ground(), a)},
               {"closure", modmat::io::set_to_json(fam.ground(), modmat::closure(fam, a, fixpoint))}});
      }
      return ok;
    }

    if (pairs->parsed()) {
      const auto fam = modmat::io::circuit_family_from_json(modmat::io::read_json_file(file));
      json out = json::array();
      for (auto [i, j] : modmat::modular_pairs(fam)) {
        out.push_back({modmat::io::set_to_json(fam.ground(), fam.members()[i]),
                       modmat::io::set_to_json(fam.ground(), fam.members()[j])});
      }
      print({{"modular_pairs", out}});
      return ok;
    }

    if (gen->parsed()) {
      if (gen_uniform->parsed()) print(modmat::io::to_json(modmat::uniform(rank_arg, size_arg)));
      if (gen->got_subcommand("fano")) print(modmat::io::to_json(modmat::fano()));
      if (gen_graphic->parsed()) {
        if (complete_opt->count() == 0 && edges_opt->count() == 0) {
          throw modmat::Error(modmat::Errc::bad_parameters, "give --complete or --edges");
        }
        const auto g = complete_opt->count() ? modmat::complete_graph(complete_arg) : parse_edges(edges_arg);
        print(signed_out ? modmat::io::to_json(modmat::signed_graphic(g)) : modmat::io::to_json(modmat::graphic(g)));
      }
      if (gen_vector->parsed()) {
        const auto m = parse_matrix(matrix_arg);
        print(signed_out ? modmat::io::to_json(modmat::signed_vector_circuits(m))
                         : modmat::io::to_json(modmat::vector_circuits(m)));
      }
      return ok;
    }

    if (verify->parsed()) {
      opt.only_shard = shard_arg;
      const auto r = modmat::run_experiment(modmat::parse_experiment_kind(kind), n_arg, opt);
      print(modmat::to_json(r));
      return r.counterexample_count == 0 ? ok : rejected;
    }

    if (exp_dot->parsed()) {
      const json doc = modmat::io::read_json_file(file);
      if (doc.contains("circuits")) {
        const auto fam = modmat::io::circuit_family_from_json(doc);
        std::cout << modmat::io::hasse_dot(modmat::to_finite_lattice(modmat::union_lattice(fam, union_cap())), "U(C)");
      } else if (doc.contains("flats")) {
        std::cout << modmat::io::hasse_dot(modmat::to_finite_lattice(modmat::io::flat_family_from_json(doc)), "flats");
      } else {
        std::cout << modmat::io::hasse_dot(modmat::io::lattice_from_json(doc));
      }
      return ok;
    }
  } catch (const modmat::Error& e) {
    std::cerr << e.what() << "\n";
    return e.is_resource_limit() ? resource : malformed;
  }
  return ok;
}
