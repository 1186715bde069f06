#pragma once

#include <vector>

#include "derand/alloc.hpp"
#include "derand/modgame.hpp"
#include "derand/peer.hpp"
#include "derand/random.hpp"
#include "derand/school.hpp"
#include "derand/tasks.hpp"

/// Random instance generators for property checks.
namespace derand::gen {

/// Random weights in {0..9}, normalized; never all zero.
modgame::MixedStrategy random_strategy(int modulus, Rng& rng);

/// Random per-outcome utilities in {0..5}.
modgame::ModGame random_game(int n_agents, int modulus, Rng& rng);

/// Integer positions in [0, 100], not all equal.
std::vector<Rational> random_positions(int count, Rng& rng);

/// Times k/2 with k in [1, 20]; true times equal declared ones.
tasks::TaskInstance random_tasks(int m, Rng& rng);

peer::PeerProfile random_peer_profile(int n, Rng& rng);

/// Every student lists a random subset of schools; capacities in [1, 2];
/// priorities are a random coarse partition of the students.
school::SchoolInstance random_school(int n_students, int n_schools, Rng& rng);

alloc::AllocInstance random_alloc(int n_agents, int n_items, Rng& rng);

}  // namespace derand::gen
