#include "paradigm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "paradigm/aut.hpp"
#include "paradigm/bisim.hpp"
#include "paradigm/generators.hpp"
#include "paradigm/model_file.hpp"
#include "paradigm/reduction.hpp"
#include "paradigm/translator.hpp"

namespace paradigm::cli {
namespace {

struct Failure {
  int code;
  std::string message;
};

struct Options {
  std::string file;
  std::string variant;
  int clients = 1;

  std::string what = "system";
  std::string instance;
  std::string partition;
  std::string inert_set;
  bool has_inert_set = false;
  bool reduced = false;
  bool force = false;
  bool oracle = false;
  std::string format = "aut";
  std::string output;

  std::string aut_a, aut_b;

  int clients_max = 0;
  int full_max = -1;
  std::vector<int> client_list;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIoError, "cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush())
    throw Failure{kIoError, "cannot write '" + path + "'"};
}

ActionSet split_list(const std::string& text) {
  ActionSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.insert(item);
  }
  return out;
}

std::string join(const auto& items, const char* sep = ", ") {
  std::string out;
  for (const auto& x : items) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

std::string show(const Transition& t) {
  return t.source + " -" + t.action + "-> " + t.target;
}

ParadigmModel load_model(const Options& o, std::ostream& err) {
  if (!o.file.empty() && !o.variant.empty())
    throw Failure{kInvalidInput, "give a model file or --variant, not both"};
  ParadigmModel m;
  if (!o.variant.empty()) {
    m = generate_model(parse_variant(o.variant), o.clients);
  } else if (!o.file.empty()) {
    try {
      m = parse_model(read_file(o.file));
    } catch (const ModelSyntaxError& e) {
      throw Failure{kInvalidInput, o.file + ":" + e.what()};
    }
  } else {
    throw Failure{kInvalidInput, "no model: give a model file or --variant"};
  }
  const ValidationReport report = validate_model(m);
  if (!report.valid()) throw Failure{kInvalidInput, to_string(report)};
  for (const auto& v : report.items()) err << to_string(v) << '\n';
  return m;
}

const ComponentInstance& pick_instance(const ParadigmModel& m,
                                       const std::string& name) {
  if (name.empty()) {
    const auto parts = m.participants();
    if (parts.empty()) throw Failure{kInvalidInput, "model has no participants"};
    return *parts.front();
  }
  const ComponentInstance* inst = m.find_instance(name);
  if (!inst) throw Failure{kInvalidInput, "unknown instance '" + name + "'"};
  return *inst;
}

const ComponentInstance& pick_participant(const ParadigmModel& m,
                                          const std::string& name) {
  const ComponentInstance& inst = pick_instance(m, name);
  if (inst.conductor)
    throw Failure{kInvalidInput, "'" + inst.name + "' is a conductor"};
  return inst;
}

ActionSet hidden_for(const Options& o, const ParadigmModel& m,
                     const ComponentInstance& inst) {
  if (o.has_inert_set) return split_list(o.inert_set);
  return inert_transitions(m, inst).inert_actions();
}

HiddenSets hidden_sets(const Options& o, const ParadigmModel& m) {
  if (!o.has_inert_set) return inert_hidden_sets(m);
  HiddenSets out;
  for (const auto* inst : m.participants()) out[inst->name] = split_list(o.inert_set);
  return out;
}

void emit(const Lts& l, const Options& o, std::ostream& out) {
  const std::string text = o.format == "dot" ? export_dot(l) : export_aut(l);
  if (o.output.empty()) {
    out << text;
    return;
  }
  write_file(o.output, text);
  if (o.format == "aut") {
    std::filesystem::path names(o.output);
    names.replace_extension(".names");
    write_file(names.string(), export_state_names(l));
  }
  const LtsStats s = stats(l);
  out << o.output << ": " << s.states << " states, " << s.transitions
      << " transitions\n";
}

std::string describe(const Lts& l) {
  const LtsStats s = stats(l);
  return std::to_string(s.states) + " states, " +
         std::to_string(s.transitions) + " transitions";
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  out << "valid: " << m.stds.size() << " stds, " << m.partitions.size()
      << " partitions, " << m.instances.size() << " instances, "
      << m.rules.size() << " rules\n";
  return kOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const ParadigmModel m =
      generate_model(parse_variant(o.variant.empty() ? "basic" : o.variant),
                     o.clients);
  const std::string text = print_model(m);
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
  return kOk;
}

int cmd_translate(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  if (o.what == "system") {
    emit(o.reduced ? reduced_system(m, hidden_sets(o, m)) : translate_system(m),
         o, out);
    return kOk;
  }
  const ComponentInstance& inst = pick_instance(m, o.instance);
  if (o.what == "detailed" && inst.conductor) {
    emit(translate_conductor(m.std_of(inst), inst.name), o, out);
    return kOk;
  }
  const ComponentInstance& part = pick_participant(m, o.instance);
  if (o.what == "detailed") {
    emit(o.reduced ? reduce_component(m, part, hidden_for(o, m, part)).detailed
                   : translate_component(m, part).detailed,
         o, out);
  } else if (o.what == "global") {
    const ComponentTranslation c = translate_component(m, part);
    for (const auto& g : c.globals)
      if (o.partition.empty() || g.partition == o.partition) {
        emit(g.lts, o, out);
        return kOk;
      }
    throw Failure{kInvalidInput,
                  part.name + " has no role over '" + o.partition + "'"};
  } else {
    emit(o.reduced
             ? compose_component(reduce_component(m, part, hidden_for(o, m, part)))
             : translate_component_dg(m, part),
         o, out);
  }
  return kOk;
}

int cmd_inert(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  std::vector<const ComponentInstance*> targets;
  if (o.instance.empty())
    targets = m.participants();
  else
    targets.push_back(&pick_participant(m, o.instance));

  for (const auto* inst : targets) {
    const InertReport r = inert_transitions(m, *inst);
    out << inst->name << '\n';
    for (const auto& v : r.transitions) {
      out << "  " << std::left << std::setw(28) << show(v.transition);
      if (v.inert) {
        out << "inert\n";
      } else {
        const InertWitness& w = *v.witness;
        out << "not inert: trap " << w.trap << " of " << w.partition << "."
            << w.phase << " holds " << w.inside << " only\n";
      }
    }
    out << "  inert actions: " << join(r.inert_actions()) << '\n';
  }
  return kOk;
}

int cmd_quotient(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  const ComponentInstance& inst = pick_participant(m, o.instance);
  const ActionSet hidden = hidden_for(o, m, inst);
  const ReducedComponent rc = quotient_detailed(m.std_of(inst), hidden);
  out << rc.std.name << " hiding {" << join(hidden) << "}\n";
  for (const auto& b : rc.std.states)
    out << "  block " << b << (b == rc.std.initial ? " (initial)" : "")
        << ": " << join(rc.members(b)) << '\n';
  for (const auto& t : rc.std.transitions) out << "  " << show(t) << '\n';
  return kOk;
}

Lts load_aut(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return import_aut(text);
  } catch (const AutParseError& e) {
    throw Failure{kInvalidInput, path + ":" + e.what()};
  }
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const Lts a = load_aut(o.aut_a);
  const Lts b = load_aut(o.aut_b);
  bool same = false;
  if (o.oracle) {
    try {
      same = oracle_equivalent(a, b, 4000);
    } catch (const std::length_error& e) {
      throw Failure{kInvalidInput, e.what()};
    }
  } else {
    const EquivalenceResult r = equivalent(a, b);
    same = r.equivalent;
    if (!r.report.empty()) out << r.report << '\n';
  }
  out << (same ? "equivalent" : "not equivalent") << '\n';
  return same ? kOk : kPropertyFalse;
}

int cmd_lemma1(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  const ComponentInstance& inst = pick_participant(m, o.instance);
  const ActionSet hidden = hidden_for(o, m, inst);
  const ReductionCheck c = verify_reduction(m, inst, hidden);
  out << inst.name << " hiding {" << join(hidden) << "}\n"
      << "  reduced:  " << describe(c.reduced) << '\n'
      << "  original: " << describe(c.original) << '\n'
      << "  " << (c.holds ? "branching bisimilar" : "not branching bisimilar")
      << '\n';
  return c.holds ? kOk : kPropertyFalse;
}

int cmd_lemma2(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  const ComponentInstance& inst = pick_participant(m, o.instance);
  const PreservationCheck c = verify_detailed_preservation(m, inst);
  out << inst.name << '\n'
      << "  detailed:   " << describe(c.detailed) << '\n'
      << "  abstracted: " << describe(c.abstracted) << '\n'
      << "  " << (c.holds ? "branching bisimilar" : "not branching bisimilar")
      << '\n';
  return c.holds ? kOk : kPropertyFalse;
}

int cmd_reduce_system(const Options& o, std::ostream& out, std::ostream& err) {
  const ParadigmModel m = load_model(o, err);
  const HiddenSets hidden = hidden_sets(o, m);
  bool all_hold = true;
  for (const auto& [name, set] : hidden) {
    const ReductionCheck c = verify_reduction(m, m.instance(name), set);
    out << name << " hiding {" << join(set) << "}: "
        << (c.holds ? "sound" : "NOT sound") << '\n';
    all_hold = all_hold && c.holds;
  }
  if (!all_hold && !o.force) {
    err << "refusing to reduce; pass --force to override\n";
    return kPropertyFalse;
  }
  const Lts l = reduced_system(m, hidden, true);
  out << "reduced system: " << describe(l) << '\n';
  if (!o.output.empty()) emit(l, o, out);
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<int> ns = o.client_list;
  if (ns.empty()) {
    if (o.clients_max < 1)
      throw Failure{kInvalidInput, "bench needs --clients-max or --clients"};
    for (int n = std::min(2, o.clients_max); n <= o.clients_max; ++n)
      ns.push_back(n);
  }
  const Variant v = parse_variant(o.variant.empty() ? "basic" : o.variant);
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };

  out << std::left << std::setw(8) << "clients" << std::right << std::setw(12)
      << "states" << std::setw(14) << "transitions";
  if (o.reduced)
    out << std::setw(12) << "red.states" << std::setw(14) << "red.trans";
  out << std::setw(10) << "seconds" << '\n';

  for (int n : ns) {
    const ParadigmModel m = generate_model(v, n);
    const auto t0 = Clock::now();
    out << std::left << std::setw(8) << n << std::right;
    if (o.full_max < 0 || n <= o.full_max) {
      const LtsStats s = stats(translate_system(m));
      out << std::setw(12) << s.states << std::setw(14) << s.transitions;
    } else {
      out << std::setw(12) << "-" << std::setw(14) << "-";
    }
    if (o.reduced) {
      const LtsStats s = stats(reduced_system(m, inert_hidden_sets(m)));
      out << std::setw(12) << s.states << std::setw(14) << s.transitions;
    }
    out << std::setw(10) << std::fixed << std::setprecision(2) << seconds(t0)
        << '\n'
        << std::flush;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

void model_options(CLI::App* sub, Options& o) {
  sub->add_option("model", o.file, "Model file");
  sub->add_option("--variant", o.variant, "Built-in model: basic, return, simple")
      ->check(CLI::IsMember({"basic", "return", "simple"}));
  sub->add_option("--clients", o.clients, "Number of clients of the built-in model")
      ->check(CLI::PositiveNumber);
}

void inert_set_option(CLI::App* sub, Options& o) {
  sub->add_option("--inert-set", o.inert_set,
                  "Comma-separated actions to hide (default: the inert ones)")
      ->each([&o](const std::string&) { o.has_inert_set = true; });
}

void output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "aut or dot")
      ->check(CLI::IsMember({"aut", "dot"}));
  sub->add_option("-o,--output", o.output,
                  "Output file; an .aut also gets a .names sidecar");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Paradigm model translation, minimisation and reduction"};
  app.name("paradigm");
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a model");
  model_options(validate, o);

  auto* translate = app.add_subcommand("translate", "Translate to an LTS");
  model_options(translate, o);
  translate->add_option("--what", o.what, "detailed, global, dg or system")
      ->check(CLI::IsMember({"detailed", "global", "dg", "system"}));
  translate->add_option("--instance", o.instance, "Component instance");
  translate->add_option("--partition", o.partition, "Role partition for --what global");
  translate->add_flag("--reduced", o.reduced, "Reduce by hiding inert actions first");
  inert_set_option(translate, o);
  output_options(translate, o);

  auto* inert = app.add_subcommand("inert", "List globally inert transitions");
  model_options(inert, o);
  inert->add_option("--instance", o.instance, "Component instance");

  auto* quotient = app.add_subcommand("quotient", "Quotient a detailed STD");
  model_options(quotient, o);
  quotient->add_option("--instance", o.instance, "Component instance");
  inert_set_option(quotient, o);

  auto* equiv = app.add_subcommand("equiv", "Branching bisimilarity of two .aut files");
  equiv->add_option("a", o.aut_a, "First LTS")->required();
  equiv->add_option("b", o.aut_b, "Second LTS")->required();
  equiv->add_flag("--oracle", o.oracle, "Use the naive fixpoint checker");

  auto* lemma1 = app.add_subcommand("lemma1", "Check first-reduce-then-compose for one component");
  model_options(lemma1, o);
  lemma1->add_option("--instance", o.instance, "Component instance");
  inert_set_option(lemma1, o);

  auto* lemma2 = app.add_subcommand("lemma2", "Check that a component keeps its detailed behaviour");
  model_options(lemma2, o);
  lemma2->add_option("--instance", o.instance, "Component instance");

  auto* reduce = app.add_subcommand("reduce-system", "Reduce every participant and compose");
  model_options(reduce, o);
  inert_set_option(reduce, o);
  reduce->add_flag("--force", o.force, "Compose even if a reduction check fails");
  output_options(reduce, o);

  auto* bench = app.add_subcommand("bench", "State space sizes of the client/server family");
  bench->add_option("--clients-max", o.clients_max, "Largest number of clients")
      ->check(CLI::PositiveNumber);
  bench->add_option("--clients", o.client_list, "Explicit client counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--variant", o.variant, "basic, return or simple")
      ->check(CLI::IsMember({"basic", "return", "simple"}));
  bench->add_flag("--reduced", o.reduced, "Also report the reduced system");
  bench->add_option("--full-max", o.full_max, "Skip the full system above this size");

  auto* generate = app.add_subcommand("generate", "Print a built-in model");
  generate->add_option("--variant", o.variant, "basic, return or simple")
      ->check(CLI::IsMember({"basic", "return", "simple"}));
  generate->add_option("--clients", o.clients, "Number of clients")
      ->check(CLI::PositiveNumber);
  generate->add_option("-o,--output", o.output, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (translate->parsed()) return cmd_translate(o, out, err);
    if (inert->parsed()) return cmd_inert(o, out, err);
    if (quotient->parsed()) return cmd_quotient(o, out, err);
    if (equiv->parsed()) return cmd_equiv(o, out);
    if (lemma1->parsed()) return cmd_lemma1(o, out, err);
    if (lemma2->parsed()) return cmd_lemma2(o, out, err);
    if (reduce->parsed()) return cmd_reduce_system(o, out, err);
    if (bench->parsed()) return cmd_bench(o, out);
    if (generate->parsed()) return cmd_generate(o, out);
  } catch (const Failure& f) {
    err << f.message << (f.message.ends_with('\n') ? "" : "\n");
    return f.code;
  } catch (const ReductionRefused& e) {
    err << e.what() << '\n';
    return kPropertyFalse;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace paradigm::cli
