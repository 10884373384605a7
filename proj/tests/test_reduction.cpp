#include <doctest.h>

#include "paradigm/generators.hpp"
#include "paradigm/reduction.hpp"
#include "support/oracles.hpp"

using namespace paradigm;

namespace {

ParadigmModel model(Variant v, int n = 1) { return generate_model(v, n); }

const ComponentInstance& client1(const ParadigmModel& m) { return m.instance("Client1"); }

std::map<std::string, std::size_t> histogram(const oracle::Graph& g) {
  std::map<std::string, std::size_t> out;
  for (const auto& [s, l, t] : g.edges) ++out[l];
  return out;
}

Lts protocol_view(const Lts& l) {
  return hide(l, HideSet{LabelPattern::of_kind(LabelKind::kOk)});
}

}  // namespace

TEST_CASE("inert transitions of the client") {
  const ParadigmModel m = model(Variant::kBasic);
  const InertReport r = inert_transitions(m, client1(m));
  CHECK(r.inert_actions() == ActionSet{"explain", "leave"});

  const TransitionVerdict* enter = r.find({"Out", "enter", "Waiting"});
  REQUIRE(enter);
  CHECK_FALSE(enter->inert);
  REQUIRE(enter->witness);
  CHECK(enter->witness->phase == "Interrupt");
  CHECK(enter->witness->trap == "notYet");
  CHECK(enter->witness->inside == "Out");

  const ParadigmModel ret = model(Variant::kReturn);
  const InertReport rr = inert_transitions(ret, client1(ret));
  CHECK(rr.inert_actions() == ActionSet{"explain", "leave"});
  const TransitionVerdict* back = rr.find({"Waiting", "return", "Out"});
  REQUIRE(back);
  CHECK_FALSE(back->inert);
  CHECK(back->witness->phase == "Interrupt");
  CHECK(back->witness->trap == "request");

  // the coarse partition still separates enter and thank by trap done
  const ParadigmModel simple = model(Variant::kSimple);
  CHECK(inert_transitions(simple, client1(simple)).inert_actions() ==
        ActionSet{"explain", "leave"});
}

TEST_CASE("inertness agrees with direct evaluation") {
  oracle::Rng rng(17);
  for (int k = 0; k < 300; ++k) {
    auto [std, part] = oracle::random_std_partition(rng);
    const std::vector<Partition> parts{part};
    const InertReport r = inert_transitions(std, parts);
    const auto expected = oracle::naive_inert(std, parts);
    for (const auto& v : r.transitions) {
      CHECK(v.inert == expected.at(v.transition));
      CHECK(v.inert == !v.witness.has_value());
    }
    for (const auto& [a, inert] : r.actions) {
      bool all = true;
      for (const auto& [t, i] : expected)
        if (t.action == a) all = all && i;
      CHECK(inert == all);
    }
  }
}

TEST_CASE("quotient_detailed") {
  const Std client = *model(Variant::kBasic).find_std("Client");

  const ReducedComponent q = quotient_detailed(client, {"explain", "leave"});
  CHECK(q.std.name == "QClient");
  CHECK(q.std.states.size() == 2);
  CHECK(q.members("{AtDoor,Out}") == StateSet{"AtDoor", "Out"});
  CHECK(q.members("{Busy,Waiting}") == StateSet{"Busy", "Waiting"});
  CHECK(q.std.initial == "{AtDoor,Out}");
  CHECK(q.std.transitions == std::vector<Transition>{{"{AtDoor,Out}", "enter", "{Busy,Waiting}"},
                                                     {"{Busy,Waiting}", "thank", "{AtDoor,Out}"}});

  const ReducedComponent same = quotient_detailed(client, {});
  CHECK(same.std.states.size() == 4);
  CHECK(same.std.transitions.size() == 4);
  CHECK(same.block_of.at("Busy") == "Busy");

  const ReducedComponent wrong = quotient_detailed(client, {"enter", "thank"});
  CHECK(wrong.members(wrong.block_of.at("Out")) == StateSet{"Out", "Waiting"});
  CHECK(wrong.members(wrong.block_of.at("Busy")) == StateSet{"AtDoor", "Busy"});

  CHECK_THROWS_AS(quotient_detailed(client, {"dance"}), UnknownActionError);
}

TEST_CASE("residual hidden steps keep their action") {
  const Std client = *model(Variant::kReturn).find_std("Client");
  const ReducedComponent q = quotient_detailed(client, {"explain", "leave"});
  CHECK(q.std.states.size() == 3);
  CHECK(q.std.has_transition({"Waiting", "explain", "Busy"}));
  CHECK_FALSE(q.std.has_action("leave"));
}

TEST_CASE("monotone in the hidden set") {
  oracle::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    auto [std, part] = oracle::random_std_partition(rng);
    ActionSet small, large;
    for (const auto& a : std.actions) {
      const int r = static_cast<int>(oracle::pick(rng, 3));
      if (r == 0) small.insert(a);
      if (r <= 1) large.insert(a);
    }
    CHECK(quotient_detailed(std, large).std.states.size() <=
          quotient_detailed(std, small).std.states.size());
  }
}

TEST_CASE("reduced detailed process") {
  const Std client = *model(Variant::kBasic).find_std("Client");
  const ReducedComponent q = quotient_detailed(client, {"explain", "leave"});
  const ReducedDetailed rd = reduced_detailed_lts(q, {"Out", "Waiting", "AtDoor"}, "Client1");
  CHECK(oracle::from_lts(rd.lts).edges == oracle::qclient(1).edges);
  CHECK(rd.at_rules.size() == 3);

  const ReducedDetailed partial = reduced_detailed_lts(q, {"Out"}, "Client1");
  CHECK(partial.lts.transitions().size() == 3);
  CHECK(partial.at_rules.size() == 1);

  const Std simple = *model(Variant::kSimple).find_std("Client");
  const ReducedComponent all =
      quotient_detailed(simple, {"enter", "explain", "thank", "leave"});
  CHECK(reduced_detailed_lts(all, {"Out", "AtDoor"}, "Client1").lts.state_count() == 1);
}

TEST_CASE("first reduce then compose, one component") {
  const ParadigmModel m = model(Variant::kBasic);
  const ReductionCheck good = verify_reduction(m, client1(m), {"explain", "leave"});
  CHECK(good.holds);
  CHECK(good.reduced.state_count() == 9);
  CHECK(good.original.state_count() == 13);

  const ReductionCheck bad = verify_reduction(m, client1(m), {"enter", "thank"});
  CHECK_FALSE(bad.holds);
  CHECK_FALSE(oracle_equivalent(bad.reduced, bad.original));

  const ParadigmModel ret = model(Variant::kReturn);
  CHECK(verify_reduction(ret, client1(ret), {"explain", "leave"}).holds);

  const ParadigmModel simple = model(Variant::kSimple);
  const ReductionCheck coarse =
      verify_reduction(simple, client1(simple), {"enter", "explain", "thank", "leave"});
  CHECK(coarse.holds);
  CHECK(coarse.reduced.state_count() == 3);
  CHECK(oracle_equivalent(coarse.reduced, coarse.original));

  CHECK_THROWS_AS(verify_reduction(m, client1(m), {"nap"}), UnknownActionError);
}

TEST_CASE("every inert subset reduces soundly") {
  for (auto v : {Variant::kBasic, Variant::kReturn, Variant::kSimple}) {
    const ParadigmModel m = model(v);
    const ActionSet inert = inert_transitions(m, client1(m)).inert_actions();
    const std::vector<std::string> list(inert.begin(), inert.end());
    for (unsigned mask = 0; mask < (1u << list.size()); ++mask) {
      ActionSet g;
      for (std::size_t i = 0; i < list.size(); ++i)
        if (mask & (1u << i)) g.insert(list[i]);
      CHECK(verify_reduction(m, client1(m), g).holds);
    }
  }
}

TEST_CASE("detailed behaviour is preserved") {
  const ParadigmModel m = model(Variant::kBasic);
  const PreservationCheck c = verify_detailed_preservation(m, client1(m));
  CHECK(c.holds);
  CHECK(oracle_equivalent(c.detailed, c.abstracted));

  const ParadigmModel simple = model(Variant::kSimple);
  const PreservationCheck s = verify_detailed_preservation(simple, client1(simple));
  CHECK(s.holds == oracle_equivalent(s.detailed, s.abstracted));

  // a single phase that never allows thank
  ParadigmModel cut = model(Variant::kBasic);
  Phase only{"Only", {"Out", "Waiting", "Busy", "AtDoor"}, {}, {}};
  only.transitions = {{"Out", "enter", "Waiting"}, {"Waiting", "explain", "Busy"},
                      {"AtDoor", "leave", "Out"}};
  only.traps = {{"all", only.states}};
  cut.partitions = {{"CS", "Client", {only}}};
  cut.rules.clear();
  Role r;
  r.partition = "CS";
  r.global = {"Client1(CS)", {"Only"}, {}, {}, "Only"};
  cut.instances[0].roles = {r};
  const PreservationCheck lost = verify_detailed_preservation(cut, client1(cut));
  CHECK_FALSE(lost.holds);
  CHECK_FALSE(oracle_equivalent(lost.detailed, lost.abstracted));
}

TEST_CASE("reduced system") {
  for (int n : {1, 2}) {
    CAPTURE(n);
    const ParadigmModel m = model(Variant::kBasic, n);
    const oracle::Graph got = oracle::from_lts(reduced_system(m, inert_hidden_sets(m)));
    const oracle::Graph expected = oracle::client_server_system(n, true);
    CHECK(got.states == expected.states);
    CHECK(got.edges.size() == expected.edges.size());
    CHECK(histogram(got) == histogram(expected));
  }
  const ParadigmModel m2 = model(Variant::kBasic, 2);
  const Lts r2 = reduced_system(m2, inert_hidden_sets(m2));
  CHECK(r2.state_count() == 32);
  CHECK(r2.transitions().size() == 54);
}

TEST_CASE("reduction guard") {
  const ParadigmModel m = model(Variant::kBasic, 2);
  HiddenSets wrong{{"Client1", {"enter", "thank"}}};
  CHECK_THROWS_AS(reduce_model(m, wrong), ReductionRefused);
  CHECK_NOTHROW(reduce_model(m, wrong, true));
  CHECK_THROWS_AS(reduce_model(m, {{"Nobody", {}}}), std::invalid_argument);
}

TEST_CASE("reduction keeps the protocol view") {
  for (auto v : {Variant::kBasic, Variant::kReturn}) {
    for (int n : {1, 2, 3}) {
      CAPTURE(n);
      const ParadigmModel m = model(v, n);
      CHECK(equivalent(protocol_view(translate_system(m)),
                       protocol_view(reduced_system(m, inert_hidden_sets(m)))));
    }
  }
}
