#include "derand/generators.hpp"

namespace derand::gen {

modgame::MixedStrategy random_strategy(int modulus, Rng& rng) {
  std::vector<int> raw(modulus);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : raw) total += (w = uniform_int(rng, 0, 9));
  }
  std::vector<Rational> weights;
  for (int w : raw) weights.emplace_back(w, total);
  return modgame::MixedStrategy(std::move(weights));
}

modgame::ModGame random_game(int n_agents, int modulus, Rng& rng) {
  std::vector<std::vector<Rational>> u(n_agents, std::vector<Rational>(modulus));
  for (auto& row : u) {
    for (auto& x : row) x = uniform_int(rng, 0, 5);
  }
  return modgame::ModGame(modulus, std::move(u));
}

std::vector<Rational> random_positions(int count, Rng& rng) {
  for (;;) {
    std::vector<Rational> out;
    for (int i = 0; i < count; ++i) out.emplace_back(uniform_int(rng, 0, 100));
    for (const auto& x : out) {
      if (x != out[0]) return out;
    }
  }
}

tasks::TaskInstance random_tasks(int m, Rng& rng) {
  tasks::TaskInstance t;
  for (auto& row : t.declared) {
    for (int j = 0; j < m; ++j) row.emplace_back(uniform_int(rng, 1, 20), 2);
  }
  return t;
}

peer::PeerProfile random_peer_profile(int n, Rng& rng) {
  peer::PeerProfile p;
  for (int i = 0; i < n; ++i) p.prefs.push_back(random_ranking(n, rng));
  return p;
}

school::SchoolInstance random_school(int n_students, int n_schools, Rng& rng) {
  school::SchoolInstance inst;
  for (int s = 0; s < n_students; ++s) {
    auto order = random_ranking(n_schools, rng);
    order.resize(uniform_int(rng, 0, n_schools));
    inst.student_prefs.push_back(order);
  }
  for (int c = 0; c < n_schools; ++c) {
    school::School school;
    school.capacity = uniform_int(rng, 1, 2);
    const auto students = random_ranking(n_students, rng);
    std::vector<int> group;
    for (int s : students) {
      group.push_back(s);
      if (uniform_int(rng, 0, 2) == 0) {
        school.groups.push_back(group);
        group.clear();
      }
    }
    if (!group.empty()) school.groups.push_back(group);
    inst.schools.push_back(school);
  }
  return inst;
}

alloc::AllocInstance random_alloc(int n_agents, int n_items, Rng& rng) {
  alloc::AllocInstance inst;
  inst.n_items = n_items;
  for (int i = 0; i < n_agents; ++i) inst.prefs.push_back(random_ranking(n_items, rng));
  return inst;
}

}  // namespace derand::gen
