#include "derand/instance.hpp"

#include <limits>
#include <string>

#include "derand/modgame.hpp"

namespace derand::io {

using nlohmann::json;

namespace {

// A JSON value plus its pointer path, for error messages.
class Node {
 public:
  Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json& raw() const { return *value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(path_, message); }

  Node operator[](const std::string& key) const {
    if (!value_->is_object()) fail("expected an object");
    const auto it = value_->find(key);
    if (it == value_->end()) throw ParseError(path_ + "/" + key, "missing required field");
    return Node(*it, path_ + "/" + key);
  }

  std::optional<Node> find(const std::string& key) const {
    if (!value_->is_object()) fail("expected an object");
    const auto it = value_->find(key);
    if (it == value_->end() || it->is_null()) return std::nullopt;
    return Node(*it, path_ + "/" + key);
  }

  std::size_t size() const {
    if (!value_->is_array()) fail("expected an array");
    return value_->size();
  }

  Node operator[](std::size_t i) const { return Node((*value_)[i], path_ + "/" + std::to_string(i)); }

  std::int64_t integer() const {
    if (!value_->is_number_integer()) fail("expected an integer");
    if (value_->is_number_unsigned() && value_->get<std::uint64_t>() > std::numeric_limits<std::int64_t>::max()) {
      fail("integer too large");
    }
    return value_->get<std::int64_t>();
  }

  int small_int() const {
    const auto v = integer();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail("integer out of range");
    return static_cast<int>(v);
  }

  std::uint64_t unsigned_integer() const {
    if (!value_->is_number_integer()) fail("expected an integer");
    if (!value_->is_number_unsigned() && value_->get<std::int64_t>() < 0) fail("expected a non-negative integer");
    return value_->get<std::uint64_t>();
  }

  std::string string() const {
    if (!value_->is_string()) fail("expected a string");
    return value_->get<std::string>();
  }

  // "num/den" string or a JSON integer.
  Rational rational() const {
    if (value_->is_number_integer()) return Rational(integer());
    if (!value_->is_string()) fail("expected a rational as a \"num/den\" string");
    try {
      return parse_rational(value_->get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  // JSON integer or decimal string.
  BigInt bigint() const {
    if (value_->is_number_unsigned()) return BigInt(value_->get<std::uint64_t>());
    if (value_->is_number_integer()) return BigInt(value_->get<std::int64_t>());
    if (!value_->is_string()) fail("expected an integer or a decimal string");
    try {
      return parse_bigint(value_->get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  std::vector<int> int_list() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].small_int());
    return out;
  }

  std::vector<Rational> rational_list() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].rational());
    return out;
  }

  std::vector<std::vector<int>> int_matrix() const {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].int_list());
    return out;
  }

 private:
  const json* value_;
  std::string path_;
};

json bigint_json(const BigInt& v) {
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  if (v >= -kExact && v <= kExact) return v.convert_to<std::int64_t>();
  return v.str();
}

json bigint_list(const std::vector<BigInt>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(bigint_json(v));
  return out;
}

json rational_list(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(format_rational(v));
  return out;
}

// Re-raises a module validation error at `node`.
template <class F>
void at_path(const Node& node, F&& f) {
  try {
    f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

std::vector<BigInt> parse_bids(const Node& node, std::size_t n, const BigInt& bound) {
  if (node.size() != n) node.fail("expected " + std::to_string(n) + " bids, one per agent, got " + std::to_string(node.size()));
  std::vector<BigInt> bids;
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt b = node[i].bigint();
    if (b < 0 || b >= bound) {
      node[i].fail("agent " + std::to_string(i) + ": bid " + b.str() + " outside [0," + bound.str() + ")");
    }
    bids.push_back(b);
  }
  return bids;
}

std::vector<std::vector<int>> parse_rankings(const Node& node, std::size_t expected_rows, int items) {
  if (node.size() != expected_rows) {
    node.fail("expected " + std::to_string(expected_rows) + " rankings, got " + std::to_string(node.size()));
  }
  auto rows = node.int_matrix();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    at_path(node[i], [&] {
      if (static_cast<int>(rows[i].size()) != items) throw ValidationError("ranking must list all " + std::to_string(items) + " entries");
      permute::Permutation check(rows[i]);
    });
  }
  return rows;
}

sim::AgentPolicy parse_policy(const Node& node) {
  sim::AgentPolicy p;
  if (const auto play = node.find("play")) {
    const json& v = play->raw();
    if (v.is_string()) {
      if (v.get<std::string>() != "uniform") play->fail("play must be \"uniform\", an integer, or a weight map");
      p.play = sim::Uniform{};
    } else if (v.is_number_integer()) {
      p.play = sim::Fixed{play->integer()};
    } else if (v.is_object()) {
      std::map<int, Rational> weights;
      int top = 0;
      for (const auto& [key, w] : v.items()) {
        const Node wn(w, play->path() + "/" + key);
        int value = 0;
        at_path(wn, [&] { value = static_cast<int>(to_int64(parse_bigint(key))); });
        weights[value] = wn.rational();
        if (weights[value] != 0) top = std::max(top, value);
      }
      at_path(*play, [&] { p.play = modgame::MixedStrategy::from_map(top + 1, [&] {
                             std::map<int, Rational> trimmed;
                             for (const auto& [k, w] : weights) {
                               if (k <= top) trimmed[k] = w;
                             }
                             return trimmed;
                           }()); });
    } else {
      play->fail("play must be \"uniform\", an integer, or a weight map");
    }
  }
  if (const auto report = node.find("report")) p.report = report->raw();
  return p;
}

json policy_json(const sim::AgentPolicy& p) {
  json j;
  if (std::holds_alternative<sim::Uniform>(p.play)) {
    j["play"] = "uniform";
  } else if (const auto* f = std::get_if<sim::Fixed>(&p.play)) {
    j["play"] = f->value;
  } else {
    json w = json::object();
    const auto& mixed = std::get<modgame::MixedStrategy>(p.play);
    for (int v = 0; v < mixed.size(); ++v) {
      if (mixed.weights()[v] != 0) w[std::to_string(v)] = format_rational(mixed.weights()[v]);
    }
    j["play"] = w;
  }
  if (p.report) j["report"] = *p.report;
  return j;
}

DictatorPayload parse_dictator(const Node& root) {
  const Node agents = root["agents"];
  const std::size_t n = agents.size();
  if (n == 0) agents.fail("at least one agent required");
  DictatorPayload out;
  for (std::size_t i = 0; i < n; ++i) {
    const Node a = agents[i];
    simple::DictatorBallot b{a["integer"].integer(), a["report"].string()};
    if (b.game_integer < 0 || b.game_integer >= static_cast<std::int64_t>(n)) {
      a["integer"].fail("agent " + std::to_string(i) + ": integer " + std::to_string(b.game_integer) + " outside [0," +
                        std::to_string(n) + ")");
    }
    out.ballots.push_back(std::move(b));
  }
  return out;
}

LrmPayload parse_lrm(const Node& root) {
  const Node agents = root["agents"];
  if (agents.size() == 0) agents.fail("at least one agent required");
  LrmPayload out;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Node a = agents[i];
    simple::FacilityReport r{a["integer"].integer(), a["report"].rational()};
    if (r.game_integer < 0 || r.game_integer >= 4) {
      a["integer"].fail("agent " + std::to_string(i) + ": integer " + std::to_string(r.game_integer) + " outside [0,4)");
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

TasksPayload parse_tasks(const Node& root) {
  const auto m = static_cast<std::size_t>(root["m"].unsigned_integer());
  TasksPayload out;
  auto row = [&](const Node& node) {
    if (node.size() != m) node.fail("expected " + std::to_string(m) + " task times");
    return node.rational_list();
  };
  out.instance.declared = {row(root["t1"]), row(root["t2"])};
  const auto true1 = root.find("true_t1");
  const auto true2 = root.find("true_t2");
  if (true1.has_value() != true2.has_value()) root.fail("true_t1 and true_t2 must be given together");
  if (true1) out.instance.true_times = tasks::TimeMatrix{row(*true1), row(*true2)};
  at_path(root, [&] { tasks::validate(out.instance); });
  const Node bits = root["bits"];
  if (bits.size() != m) bits.fail("expected " + std::to_string(m) + " bit pairs");
  for (std::size_t j = 0; j < m; ++j) {
    const Node pair = bits[j];
    if (pair.size() != 2) pair.fail("expected a pair of bits");
    std::array<int, 2> b{pair[0].small_int(), pair[1].small_int()};
    for (std::size_t a = 0; a < 2; ++a) {
      if (b[a] != 0 && b[a] != 1) pair[a].fail("agent " + std::to_string(a + 1) + ": bit must be 0 or 1");
    }
    out.bit_pairs.push_back(b);
  }
  return out;
}

PeerPayload parse_peer(const Node& root) {
  PeerPayload out;
  const Node prefs = root["prefs"];
  const std::size_t n = prefs.size();
  if (n == 0) prefs.fail("at least one agent required");
  out.profile.prefs = parse_rankings(prefs, n, static_cast<int>(n));
  const std::string rule = root.find("mechanism") ? root["mechanism"].string() : "rse";
  if (rule == "rse") {
    out.rule = PeerRule::Rse;
    out.bids = parse_bids(root["bids"], n, factorial(static_cast<int>(n)));
    if (const auto c = root.find("choices")) {
      out.choices = c->int_list();
      if (out.choices->size() != n - 1) c->fail("expected " + std::to_string(n - 1) + " eliminations");
    }
  } else if (rule == "partition") {
    out.rule = PeerRule::Partition;
    if (n < 4) prefs.fail("partition mechanism needs at least 4 agents");
    const Node bits = root["parity_bits"];
    out.parity_bits = bits.int_list();
    if (out.parity_bits.size() != n - 2) bits.fail("expected " + std::to_string(n - 2) + " bits, one per non-candidate");
    for (std::size_t k = 0; k < out.parity_bits.size(); ++k) {
      if (out.parity_bits[k] != 0 && out.parity_bits[k] != 1) bits[k].fail("bit must be 0 or 1");
    }
  } else {
    root["mechanism"].fail("unknown peer mechanism \"" + rule + "\" (rse|partition)");
  }
  return out;
}

SchoolPayload parse_school(const Node& root) {
  SchoolPayload out;
  const Node students = root["students"];
  for (std::size_t s = 0; s < students.size(); ++s) out.instance.student_prefs.push_back(students[s]["prefs"].int_list());
  const Node schools = root["schools"];
  for (std::size_t c = 0; c < schools.size(); ++c) {
    out.instance.schools.push_back({schools[c]["capacity"].small_int(), schools[c]["groups"].int_matrix()});
  }
  at_path(root, [&] { school::validate(out.instance); });
  const int n = out.instance.n_students();
  const std::string mode = root.find("mode") ? root["mode"].string() : "lehmer";
  const Node bids = root["bids"];
  if (mode == "lehmer") {
    out.bids = parse_bids(bids, static_cast<std::size_t>(n), factorial(n));
  } else if (mode == "compact") {
    permute::CompactBids cb;
    for (int v : bids["a"].int_list()) cb.a.push_back(v);
    for (int v : bids["b"].int_list()) cb.b.push_back(v);
    at_path(bids, [&] { permute::validate(cb, n); });
    out.bids = std::move(cb);
  } else {
    root["mode"].fail("unknown mode \"" + mode + "\" (lehmer|compact)");
  }
  return out;
}

AllocPayload parse_alloc(const Node& root) {
  AllocPayload out;
  const Node prefs = root["prefs"];
  const std::size_t n = prefs.size();
  if (n == 0) prefs.fail("at least one agent required");
  const int items = root.find("items") ? root["items"].small_int() : static_cast<int>(prefs[0].size());
  out.instance.prefs = parse_rankings(prefs, n, items);
  out.instance.n_items = items;
  at_path(prefs, [&] { alloc::validate(out.instance); });

  const std::string mode = root.find("mode") ? root["mode"].string() : "rp";
  if (mode == "rp") {
    out.mode = AllocMode::Rp;
    out.bids = parse_bids(root["bids"], n, factorial(static_cast<int>(n)));
    return out;
  }
  if (mode != "ps") root["mode"].fail("unknown mode \"" + mode + "\" (ps|rp)");
  out.mode = AllocMode::Ps;
  if (const auto m = root.find("modulus")) {
    const auto v = m->string();
    if (v != "factorial" && v != "reduced") m->fail("modulus must be \"factorial\" or \"reduced\"");
    out.modulus = v == "factorial" ? alloc::ModulusChoice::Factorial : alloc::ModulusChoice::Reduced;
  }
  if (const auto d = root.find("draw")) {
    const auto v = d->string();
    if (v != "shifted" && v != "literal") d->fail("draw must be \"shifted\" or \"literal\"");
    out.draw = v == "shifted" ? alloc::Draw::Shifted : alloc::Draw::Literal;
  }
  const BigInt bound = out.modulus == alloc::ModulusChoice::Factorial
                           ? alloc::factorial_power(static_cast<int>(n), items)
                           : alloc::reduced_denominator(alloc::probabilistic_serial(out.instance).assignment);
  const auto sigma = root.find("sigma");
  const auto bids = root.find("bids");
  if (sigma.has_value() == bids.has_value()) root.fail("ps mode takes exactly one of \"bids\" or \"sigma\"");
  if (sigma) {
    out.sigma = sigma->bigint();
    if (*out.sigma < 0 || *out.sigma >= bound) sigma->fail("sigma outside [0," + bound.str() + ")");
  } else {
    out.bids = parse_bids(*bids, n, bound);
  }
  return out;
}

json tasks_outcome_json(const tasks::TaskOutcome& o) {
  return {{"a1", o.a1}, {"a2", o.a2}, {"p1", format_rational(o.p1)}, {"p2", format_rational(o.p2)}};
}

json allocation_json(const alloc::Allocation& a) { return json(a); }

json school_bids_json(const school::SchoolBids& bids) {
  if (const auto* full = std::get_if<std::vector<BigInt>>(&bids)) return bigint_list(*full);
  const auto& cb = std::get<permute::CompactBids>(bids);
  return {{"a", cb.a}, {"b", cb.b}};
}

std::vector<BigInt> ps_bids(const AllocPayload& p) {
  // A directly supplied sigma is treated as a single-agent game result.
  if (!p.sigma) return p.bids;
  std::vector<BigInt> bids(p.instance.n_agents(), BigInt(0));
  bids[0] = *p.sigma;
  return bids;
}

std::vector<int> report_ranking(const sim::AgentPolicy& p, std::size_t agent, std::size_t expected) {
  if (!p.report->is_array()) throw ValidationError("agent " + std::to_string(agent) + ": report must be a ranking");
  const auto r = p.report->get<std::vector<int>>();
  if (r.size() != expected) throw ValidationError("agent " + std::to_string(agent) + ": ranking has wrong length");
  permute::Permutation check(r);
  return r;
}

std::int64_t int64_modulus(const BigInt& m) {
  if (m > std::numeric_limits<std::int64_t>::max()) {
    throw CapacityError("game modulus " + m.str() + " is too large to simulate");
  }
  return m.convert_to<std::int64_t>();
}

}  // namespace

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Dictator:
      return "dictator";
    case Domain::Lrm:
      return "lrm";
    case Domain::Tasks:
      return "tasks";
    case Domain::Peer:
      return "peer";
    case Domain::School:
      return "school";
    case Domain::Alloc:
      return "alloc";
  }
  return "unknown";
}

InstanceFile parse_instance(std::string_view text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("syntax error: ") + e.what());
  }
  return parse_instance_json(document);
}

InstanceFile parse_instance_json(const json& document) {
  const Node root(document, "");
  if (!document.is_object()) root.fail("instance must be a JSON object");
  const std::string domain = root["domain"].string();
  InstanceFile out;
  if (domain == "dictator") {
    out.payload = parse_dictator(root);
  } else if (domain == "lrm") {
    out.payload = parse_lrm(root);
  } else if (domain == "tasks") {
    out.payload = parse_tasks(root);
  } else if (domain == "peer") {
    out.payload = parse_peer(root);
  } else if (domain == "school") {
    out.payload = parse_school(root);
  } else if (domain == "alloc") {
    out.payload = parse_alloc(root);
  } else {
    root["domain"].fail("unknown domain \"" + domain + "\" (dictator|lrm|tasks|peer|school|alloc)");
  }
  if (const auto policies = root.find("policies")) {
    for (std::size_t i = 0; i < policies->size(); ++i) out.policies.push_back(parse_policy((*policies)[i]));
  }
  if (const auto seed = root.find("seed")) out.seed = seed->unsigned_integer();
  if (const auto trials = root.find("trials")) out.trials = trials->unsigned_integer();
  return out;
}

json to_json(const InstanceFile& instance) {
  json j{{"domain", domain_name(instance.domain())}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DictatorPayload>) {
          j["agents"] = json::array();
          for (const auto& b : p.ballots) j["agents"].push_back({{"integer", b.game_integer}, {"report", b.preferred_candidate}});
        } else if constexpr (std::is_same_v<T, LrmPayload>) {
          j["agents"] = json::array();
          for (const auto& r : p.reports) {
            j["agents"].push_back({{"integer", r.game_integer}, {"report", format_rational(r.position)}});
          }
        } else if constexpr (std::is_same_v<T, TasksPayload>) {
          j["m"] = p.instance.m();
          j["t1"] = rational_list(p.instance.declared[0]);
          j["t2"] = rational_list(p.instance.declared[1]);
          if (p.instance.true_times) {
            j["true_t1"] = rational_list((*p.instance.true_times)[0]);
            j["true_t2"] = rational_list((*p.instance.true_times)[1]);
          }
          j["bits"] = p.bit_pairs;
        } else if constexpr (std::is_same_v<T, PeerPayload>) {
          j["prefs"] = p.profile.prefs;
          if (p.rule == PeerRule::Rse) {
            j["mechanism"] = "rse";
            j["bids"] = bigint_list(p.bids);
            if (p.choices) j["choices"] = *p.choices;
          } else {
            j["mechanism"] = "partition";
            j["parity_bits"] = p.parity_bits;
          }
        } else if constexpr (std::is_same_v<T, SchoolPayload>) {
          j["students"] = json::array();
          for (const auto& prefs : p.instance.student_prefs) j["students"].push_back({{"prefs", prefs}});
          j["schools"] = json::array();
          for (const auto& s : p.instance.schools) j["schools"].push_back({{"capacity", s.capacity}, {"groups", s.groups}});
          j["mode"] = school::mode_of(p.bids) == school::BidMode::Lehmer ? "lehmer" : "compact";
          j["bids"] = school_bids_json(p.bids);
        } else {
          j["prefs"] = p.instance.prefs;
          j["items"] = p.instance.n_items;
          if (p.mode == AllocMode::Rp) {
            j["mode"] = "rp";
            j["bids"] = bigint_list(p.bids);
          } else {
            j["mode"] = "ps";
            j["modulus"] = p.modulus == alloc::ModulusChoice::Factorial ? "factorial" : "reduced";
            j["draw"] = p.draw == alloc::Draw::Shifted ? "shifted" : "literal";
            if (p.sigma) {
              j["sigma"] = bigint_json(*p.sigma);
            } else {
              j["bids"] = bigint_list(p.bids);
            }
          }
        }
      },
      instance.payload);
  if (!instance.policies.empty()) {
    j["policies"] = json::array();
    for (const auto& p : instance.policies) j["policies"].push_back(policy_json(p));
  }
  if (instance.seed) j["seed"] = *instance.seed;
  if (instance.trials) j["trials"] = *instance.trials;
  return j;
}

json run(const InstanceFile& instance) {
  json out{{"domain", domain_name(instance.domain())}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DictatorPayload>) {
          const auto j = simple::dictator_index(p.ballots);
          json integers = json::array();
          for (const auto& b : p.ballots) integers.push_back(b.game_integer);
          out["outcome"] = {{"winner", p.ballots[j].preferred_candidate}, {"dictator", j}};
          out["transcript"] = {{"integers", integers}, {"sum_mod_n", j}};
        } else if constexpr (std::is_same_v<T, LrmPayload>) {
          json integers = json::array();
          std::vector<std::int64_t> plays;
          for (const auto& r : p.reports) {
            integers.push_back(r.game_integer);
            plays.push_back(r.game_integer);
          }
          out["outcome"] = {{"location", format_rational(simple::derand_lrm(p.reports))}};
          out["transcript"] = {{"integers", integers}, {"sum_mod_4", modgame::outcome_sum(plays, 4)}};
        } else if constexpr (std::is_same_v<T, TasksPayload>) {
          const auto o = tasks::derand_biased_min_work(p.instance, p.bit_pairs);
          json bits = json::array();
          for (const auto& pair : p.bit_pairs) bits.push_back(pair[0] ^ pair[1]);
          out["outcome"] = tasks_outcome_json(o);
          out["transcript"] = {{"bit_pairs", p.bit_pairs}, {"bits", bits}};
        } else if constexpr (std::is_same_v<T, PeerPayload>) {
          if (p.rule == PeerRule::Rse) {
            const peer::SecondStage stage =
                p.choices ? peer::SecondStage(*p.choices) : peer::SecondStage(peer::SincereReversed{});
            const auto r = peer::derand_rse(p.bids, p.profile, stage);
            out["outcome"] = {{"winner", r.winner}};
            out["transcript"] = {{"bids", bigint_list(p.bids)},
                                 {"seed", bigint_json(r.seed)},
                                 {"order", r.order.values()},
                                 {"second_stage", p.choices ? "choices" : "sincere_reversed"}};
            if (p.choices) out["transcript"]["choices"] = *p.choices;
          } else {
            const auto r = peer::partition_winner(p.profile, p.parity_bits);
            out["outcome"] = {{"winner", r.winner}};
            out["transcript"] = {{"candidate1", r.candidate1},
                                 {"candidate2", r.candidate2},
                                 {"non_candidates", r.non_candidates},
                                 {"parity_bits", p.parity_bits}};
          }
        } else if constexpr (std::is_same_v<T, SchoolPayload>) {
          const auto t = school::derand_da(p.instance, p.bids);
          out["outcome"] = {{"matching", to_json(t.matching)}};
          out["transcript"] = {{"mode", school::mode_of(p.bids) == school::BidMode::Lehmer ? "lehmer" : "compact"},
                               {"bids", school_bids_json(p.bids)},
                               {"permutation", t.permutation.values()},
                               {"priorities", t.priorities}};
          if (t.seed) out["transcript"]["seed"] = bigint_json(*t.seed);
        } else {
          if (p.mode == AllocMode::Rp) {
            const auto t = alloc::derand_rp(p.bids, p.instance);
            out["outcome"] = {{"allocation", allocation_json(t.allocation)}};
            out["transcript"] = {{"bids", bigint_list(t.bids)}, {"seed", bigint_json(t.seed)}, {"order", t.order.values()}};
          } else {
            const auto t = alloc::derand_ps(ps_bids(p), p.instance, p.modulus, p.draw);
            out["outcome"] = {{"allocation", allocation_json(t.allocation)}};
            out["transcript"] = {{"assignment", to_json(t.assignment)},
                                 {"modulus", bigint_json(t.modulus)},
                                 {"sigma", bigint_json(t.sigma)},
                                 {"draw", t.draw == alloc::Draw::Shifted ? "shifted" : "literal"}};
            if (p.sigma) {
              out["transcript"]["sigma_given"] = true;
            } else {
              out["transcript"]["bids"] = bigint_list(t.bids);
            }
          }
        }
      },
      instance.payload);
  return out;
}

std::vector<sim::AgentPolicy> effective_policies(const InstanceFile& instance) {
  std::size_t n = 0;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DictatorPayload>) {
          n = p.ballots.size();
        } else if constexpr (std::is_same_v<T, LrmPayload>) {
          n = p.reports.size();
        } else if constexpr (std::is_same_v<T, TasksPayload>) {
          n = 2;
        } else if constexpr (std::is_same_v<T, PeerPayload>) {
          n = static_cast<std::size_t>(p.profile.n());
        } else if constexpr (std::is_same_v<T, SchoolPayload>) {
          n = static_cast<std::size_t>(p.instance.n_students());
        } else {
          n = static_cast<std::size_t>(p.instance.n_agents());
        }
      },
      instance.payload);
  if (instance.policies.size() > n) {
    throw ValidationError("instance lists " + std::to_string(instance.policies.size()) + " policies for " +
                          std::to_string(n) + " agents");
  }
  auto out = instance.policies;
  out.resize(n);
  return out;
}

sim::SimMechanism sim_mechanism(const InstanceFile& instance) {
  const auto policies = effective_policies(instance);
  sim::SimMechanism m;
  m.n_agents = static_cast<int>(policies.size());
  std::visit(
      [&](auto p) {
        using T = std::decay_t<decltype(p)>;
        // Report overrides are applied once, up front, to a private copy.
        if constexpr (std::is_same_v<T, DictatorPayload>) {
          for (std::size_t a = 0; a < policies.size(); ++a) {
            if (!policies[a].report) continue;
            if (!policies[a].report->is_string()) throw ValidationError("agent " + std::to_string(a) + ": report must be a candidate string");
            p.ballots[a].preferred_candidate = policies[a].report->template get<std::string>();
          }
          m.modulus = static_cast<std::int64_t>(p.ballots.size());
          m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
            auto ballots = p.ballots;
            for (std::size_t a = 0; a < ballots.size(); ++a) ballots[a].game_integer = plays[a][0];
            return simple::derand_dictator(ballots);
          };
        } else if constexpr (std::is_same_v<T, LrmPayload>) {
          for (std::size_t a = 0; a < policies.size(); ++a) {
            if (!policies[a].report) continue;
            const auto& r = *policies[a].report;
            p.reports[a].position = r.is_number_integer() ? Rational(r.template get<std::int64_t>())
                                                          : parse_rational(r.template get<std::string>());
          }
          m.modulus = 4;
          m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
            auto reports = p.reports;
            for (std::size_t a = 0; a < reports.size(); ++a) reports[a].game_integer = plays[a][0];
            return format_rational(simple::derand_lrm(reports));
          };
        } else if constexpr (std::is_same_v<T, TasksPayload>) {
          for (std::size_t a = 0; a < 2; ++a) {
            if (!policies[a].report) continue;
            std::vector<Rational> row;
            for (const auto& t : *policies[a].report) row.push_back(parse_rational(t.template get<std::string>()));
            if (row.size() != p.bit_pairs.size()) throw ValidationError("agent " + std::to_string(a + 1) + ": report must list every task time");
            if (!p.instance.true_times) p.instance.true_times = p.instance.declared;
            p.instance.declared[a] = row;
          }
          tasks::validate(p.instance);
          m.modulus = 2;
          m.rounds = p.instance.m();
          m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
            std::vector<std::array<int, 2>> pairs;
            for (int j = 0; j < p.instance.m(); ++j) pairs.push_back({static_cast<int>(plays[0][j]), static_cast<int>(plays[1][j])});
            const auto o = tasks::derand_biased_min_work(p.instance, pairs);
            return json{{"a1", o.a1}, {"a2", o.a2}}.dump();
          };
        } else if constexpr (std::is_same_v<T, PeerPayload>) {
          for (std::size_t a = 0; a < policies.size(); ++a) {
            if (policies[a].report) p.profile.prefs[a] = report_ranking(policies[a], a, policies.size());
          }
          if (p.rule == PeerRule::Rse) {
            m.modulus = int64_modulus(factorial(p.profile.n()));
            m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
              std::vector<BigInt> bids;
              for (const auto& row : plays) bids.emplace_back(row[0]);
              const peer::SecondStage stage =
                  p.choices ? peer::SecondStage(*p.choices) : peer::SecondStage(peer::SincereReversed{});
              return std::to_string(peer::derand_rse(bids, p.profile, stage).winner);
            };
          } else {
            m.modulus = 2;
            m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
              // Candidates do not depend on bits; non-candidates fill the slots.
              const auto probe = peer::partition_winner(p.profile, std::vector<int>(p.profile.n() - 2, 0));
              std::vector<int> bits;
              for (int a : probe.non_candidates) bits.push_back(static_cast<int>(plays[a][0]));
              return std::to_string(peer::partition_winner(p.profile, bits).winner);
            };
          }
        } else if constexpr (std::is_same_v<T, SchoolPayload>) {
          if (school::mode_of(p.bids) != school::BidMode::Lehmer) {
            throw ValidationError("simulation needs lehmer mode; compact bids have per-student ranges");
          }
          for (std::size_t a = 0; a < policies.size(); ++a) {
            if (!policies[a].report) continue;
            if (!policies[a].report->is_array()) throw ValidationError("student " + std::to_string(a) + ": report must be a school list");
            p.instance.student_prefs[a] = policies[a].report->template get<std::vector<int>>();
          }
          school::validate(p.instance);
          m.modulus = int64_modulus(factorial(p.instance.n_students()));
          m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
            std::vector<BigInt> bids;
            for (const auto& row : plays) bids.emplace_back(row[0]);
            return to_json(school::derand_da(p.instance, bids).matching).dump();
          };
        } else {
          for (std::size_t a = 0; a < policies.size(); ++a) {
            if (policies[a].report) {
              p.instance.prefs[a] = report_ranking(policies[a], a, static_cast<std::size_t>(p.instance.n_items));
            }
          }
          if (p.mode == AllocMode::Rp) {
            m.modulus = int64_modulus(factorial(p.instance.n_agents()));
            m.outcome = [p](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
              std::vector<BigInt> bids;
              for (const auto& row : plays) bids.emplace_back(row[0]);
              return json(alloc::derand_rp(bids, p.instance).allocation).dump();
            };
          } else {
            const auto matrix = alloc::probabilistic_serial(p.instance).assignment;
            const BigInt modulus = p.modulus == alloc::ModulusChoice::Factorial
                                       ? alloc::factorial_power(p.instance.n_agents(), p.instance.n_items)
                                       : alloc::reduced_denominator(matrix);
            m.modulus = int64_modulus(modulus);
            m.outcome = [matrix, modulus, draw = p.draw](const sim::PlayMatrix& plays, std::span<const sim::AgentPolicy>) {
              std::vector<BigInt> bids;
              for (const auto& row : plays) bids.emplace_back(row[0]);
              return json(alloc::realize_assignment(matrix, modgame::outcome_sum(bids, modulus), modulus, draw)).dump();
            };
          }
        }
      },
      instance.payload);
  return m;
}

json exact_dist(const InstanceFile& instance) {
  const auto policies = effective_policies(instance);
  const auto mechanism = sim_mechanism(instance);
  json out{{"domain", domain_name(instance.domain())}, {"modulus", mechanism.modulus}, {"rounds", mechanism.rounds}};
  modgame::Profile profile;
  for (const auto& p : policies) profile.push_back(sim::play_distribution(p, mechanism.modulus));
  const auto game = modgame::outcome_distribution(profile, static_cast<int>(mechanism.modulus));
  json g = json::object();
  for (const auto& [k, w] : sim::to_distribution(game)) g[k] = format_rational(w);
  out["game_distribution"] = g;
  try {
    json o = json::object();
    for (const auto& [k, w] : sim::exact_distribution(mechanism, policies)) o[k] = format_rational(w);
    out["outcome_distribution"] = o;
  } catch (const CapacityError& e) {
    out["outcome_distribution_omitted"] = e.what();
  }
  return out;
}

json to_json(const sim::TrialReport& report) {
  json freq = json::object();
  for (const auto& [k, c] : report.outcome_frequencies) freq[k] = c;
  json j{{"trials", report.trials}, {"master_seed", report.master_seed}, {"outcome_frequencies", freq}};
  if (report.empirical_tv) j["empirical_tv"] = format_rational(*report.empirical_tv);
  return j;
}

json to_json(const alloc::RationalMatrix& p) {
  json rows = json::array();
  for (const auto& r : p.to_rows()) rows.push_back(rational_list(r));
  return rows;
}

json to_json(const school::Matching& m) {
  json out = json::array();
  for (const auto& s : m.school_of) out.push_back(s ? json(*s) : json(nullptr));
  return out;
}

}  // namespace derand::io
