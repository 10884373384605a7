#include "paradigm/generators.hpp"

#include <stdexcept>

#include "paradigm/model_file.hpp"

namespace paradigm {

Variant parse_variant(std::string_view name) {
  if (name == "basic") return Variant::kBasic;
  if (name == "return") return Variant::kReturn;
  if (name == "simple") return Variant::kSimple;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (basic, return, simple)");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kBasic: return "basic";
    case Variant::kReturn: return "return";
    case Variant::kSimple: return "simple";
  }
  return "?";
}

namespace {

Std client_std(Variant v) {
  Std s;
  s.name = "Client";
  s.states = {"Out", "Waiting", "Busy", "AtDoor"};
  s.actions = {"enter", "explain", "thank", "leave"};
  s.transitions = {{"Out", "enter", "Waiting"},
                   {"Waiting", "explain", "Busy"},
                   {"Busy", "thank", "AtDoor"},
                   {"AtDoor", "leave", "Out"}};
  if (v == Variant::kReturn) {
    s.actions.push_back("return");
    s.transitions.push_back({"Waiting", "return", "Out"});
  }
  s.initial = "Out";
  return s;
}

Partition client_partition(Variant v, const Std& client) {
  Partition p;
  p.name = "CS";
  p.owner = client.name;
  const StateSet outside = {"Out", "Waiting", "AtDoor"};

  Phase without{"Without", outside, {}, {{"triv", outside}}};
  without.transitions = {{"Out", "enter", "Waiting"}, {"AtDoor", "leave", "Out"}};
  if (v == Variant::kReturn) without.transitions.insert({"Waiting", "return", "Out"});

  if (v == Variant::kSimple) {
    Phase with{"With", {"Out", "Waiting", "Busy", "AtDoor"}, {}, {}};
    with.transitions = {{"Waiting", "explain", "Busy"}, {"Busy", "thank", "AtDoor"}};
    with.traps = {{"done", {"Out", "AtDoor"}}};
    p.phases = {without, with};
    return p;
  }

  Phase interrupt{"Interrupt", outside, {{"AtDoor", "leave", "Out"}}, {}};
  interrupt.traps = {{"notYet", {"Out", "AtDoor"}}, {"request", {"Waiting"}}};
  Phase with{"With", {"Waiting", "Busy", "AtDoor"}, {}, {}};
  with.transitions = {{"Waiting", "explain", "Busy"}, {"Busy", "thank", "AtDoor"}};
  with.traps = {{"done", {"AtDoor"}}};
  p.phases = {without, interrupt, with};
  return p;
}

Role client_role(Variant v, const std::string& instance) {
  if (v == Variant::kSimple)
    return make_role(instance, "CS", "Without",
                     {{"Without", "triv", "With"}, {"With", "done", "Without"}});
  return make_role(instance, "CS", "Without",
                   {{"Without", "triv", "Interrupt"},
                    {"Interrupt", "notYet", "Without"},
                    {"Interrupt", "request", "With"},
                    {"With", "done", "Without"}});
}

}  // namespace

ParadigmModel generate_model(Variant variant, int clients) {
  if (clients < 1)
    throw std::invalid_argument("at least one client is required");

  ParadigmModel m;
  const Std client = client_std(variant);
  m.partitions.push_back(client_partition(variant, client));

  Std server;
  server.name = "Server";
  server.states = {"Idle"};
  server.initial = "Idle";
  const bool simple = variant == Variant::kSimple;

  for (int i = 1; i <= clients; ++i) {
    const std::string k = std::to_string(i);
    const std::string name = "Client" + k;
    m.instances.push_back({name, client.name, {client_role(variant, name)}, false});

    const std::string checking = "NDChecking_" + k, helping = "NDHelping_" + k;
    auto part = [&](const char* from, const char* trap, const char* to) {
      return PhaseTransfer{name, "CS", {from, trap, to}};
    };
    if (simple) {
      server.states.push_back(helping);
      server.actions.insert(server.actions.end(),
                            {"permit_" + k, "continue_" + k});
      server.transitions.push_back({"Idle", "permit_" + k, helping});
      server.transitions.push_back({helping, "continue_" + k, "Idle"});
      m.rules.push_back({"Server", {"Idle", "permit_" + k, helping},
                         {part("Without", "triv", "With")}});
      m.rules.push_back({"Server", {helping, "continue_" + k, "Idle"},
                         {part("With", "done", "Without")}});
      continue;
    }
    server.states.push_back(checking);
    server.states.push_back(helping);
    server.actions.insert(server.actions.end(),
                          {"check_" + k, "refuse_" + k, "permit_" + k,
                           "continue_" + k});
    server.transitions.push_back({"Idle", "check_" + k, checking});
    server.transitions.push_back({checking, "refuse_" + k, "Idle"});
    server.transitions.push_back({checking, "permit_" + k, helping});
    server.transitions.push_back({helping, "continue_" + k, "Idle"});
    m.rules.push_back({"Server", {"Idle", "check_" + k, checking},
                       {part("Without", "triv", "Interrupt")}});
    m.rules.push_back({"Server", {checking, "refuse_" + k, "Idle"},
                       {part("Interrupt", "notYet", "Without")}});
    m.rules.push_back({"Server", {checking, "permit_" + k, helping},
                       {part("Interrupt", "request", "With")}});
    m.rules.push_back({"Server", {helping, "continue_" + k, "Idle"},
                       {part("With", "done", "Without")}});
  }

  m.stds = {client, server};
  m.instances.push_back({"Server", server.name, {}, true});
  return m;
}

}  // namespace paradigm
