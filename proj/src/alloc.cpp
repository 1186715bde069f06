#include "derand/alloc.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include <boost/integer/common_factor_rt.hpp>

#include "derand/error.hpp"
#include "derand/modgame.hpp"

namespace derand::alloc {

namespace {

void check_square(const RationalMatrix& p, const AllocInstance& instance) {
  if (p.rows() != instance.n_agents() || p.cols() != instance.n_items) {
    throw ValidationError("matrix is " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + ", instance is " +
                          std::to_string(instance.n_agents()) + "x" + std::to_string(instance.n_items));
  }
}

void check_columns(const RationalMatrix& p) {
  for (int j = 0; j < p.cols(); ++j) {
    Rational sum = 0;
    for (int i = 0; i < p.rows(); ++i) {
      if (p(i, j) < 0 || p(i, j) > 1) throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside [0,1]");
      sum += p(i, j);
    }
    if (sum != 1) throw ValidationError("column " + std::to_string(j) + " sums to " + format_rational(sum));
  }
}

std::vector<bool> no_items(int m) { return std::vector<bool>(m, false); }

int best_remaining(const std::vector<int>& ranking, const std::vector<bool>& taken) {
  for (int item : ranking) {
    if (!taken[item]) return item;
  }
  return -1;
}

// counts[t] = number of bundle items among the agent's top t+1.
std::vector<int> prefix_counts(const std::vector<int>& ranking, const std::vector<bool>& owned) {
  std::vector<int> counts(ranking.size());
  int c = 0;
  for (std::size_t t = 0; t < ranking.size(); ++t) {
    if (owned[ranking[t]]) ++c;
    counts[t] = c;
  }
  return counts;
}

}  // namespace

void validate(const AllocInstance& instance) {
  if (instance.n_agents() < 1) throw ValidationError("allocation needs at least one agent");
  if (instance.n_items < 1) throw ValidationError("allocation needs at least one item");
  for (int i = 0; i < instance.n_agents(); ++i) {
    const auto& r = instance.prefs[i];
    bool ok = static_cast<int>(r.size()) == instance.n_items;
    std::vector<bool> seen(instance.n_items, false);
    for (int item : r) {
      if (!ok || item < 0 || item >= instance.n_items || seen[item]) {
        ok = false;
        break;
      }
      seen[item] = true;
    }
    if (!ok) {
      throw ValidationError("ranking of agent " + std::to_string(i) + " is not a permutation of the " +
                            std::to_string(instance.n_items) + " items");
    }
  }
}

RationalMatrix::RationalMatrix(const std::vector<std::vector<Rational>>& rows)
    : rows_(static_cast<int>(rows.size())), cols_(rows.empty() ? 0 : static_cast<int>(rows[0].size())) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw ValidationError("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

std::vector<std::vector<Rational>> RationalMatrix::to_rows() const {
  std::vector<std::vector<Rational>> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  return out;
}

PsResult probabilistic_serial(const AllocInstance& instance) {
  validate(instance);
  const int n = instance.n_agents();
  const int m = instance.n_items;
  PsResult out{RationalMatrix(n, m), {}};
  std::vector<Rational> left(m, Rational(1));
  auto consumed = no_items(m);
  int remaining = m;
  Rational clock = 0;
  std::vector<int> eating(n);

  while (remaining > 0) {
    EatingStep step{clock, clock, std::vector<int>(m, 0), {}};
    for (int i = 0; i < n; ++i) {
      eating[i] = best_remaining(instance.prefs[i], consumed);
      ++step.eaters[eating[i]];
    }
    Rational delta = -1;
    for (int j = 0; j < m; ++j) {
      if (step.eaters[j] == 0) continue;
      const Rational finish = left[j] / step.eaters[j];
      if (delta < 0 || finish < delta) delta = finish;
    }
    for (int i = 0; i < n; ++i) out.assignment(i, eating[i]) += delta;
    for (int j = 0; j < m; ++j) {
      if (step.eaters[j] == 0) continue;
      left[j] -= delta * step.eaters[j];
      if (left[j] == 0) {
        consumed[j] = true;
        step.consumed.push_back(j);
        --remaining;
      }
    }
    clock += delta;
    step.end = clock;
    out.trace.push_back(std::move(step));
  }
  return out;
}

BigInt factorial_power(int n, int m) { return pow(factorial(n), static_cast<unsigned>(m)); }

Verdict denominator_bound_check(const RationalMatrix& p, int n, int m) {
  const BigInt bound = factorial_power(n, m);
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      const BigInt den = denominator(p(i, j));
      if (bound % den != 0) {
        return Verdict::fail("denominator_bound",
                             "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                 format_rational(p(i, j)) + " has a denominator not dividing " + bound.str(),
                             {{"agent", i}, {"item", j}, {"entry", format_rational(p(i, j))}, {"bound", bound.str()}});
      }
    }
  }
  return Verdict::pass("denominator_bound");
}

BigInt reduced_denominator(const RationalMatrix& p) {
  BigInt acc = 1;
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) acc = boost::integer::lcm(acc, denominator(p(i, j)));
  }
  return acc;
}

Allocation realize_assignment(const RationalMatrix& p, const BigInt& sigma, const BigInt& modulus, Draw draw) {
  if (modulus < 1) throw RangeError("modulus must be positive");
  if (sigma < 0 || sigma >= modulus) {
    throw RangeError("sigma " + sigma.str() + " outside [0," + modulus.str() + ")");
  }
  check_columns(p);
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      if (modulus % denominator(p(i, j)) != 0) {
        throw ValidationError(modulus.str() + " is not a common denominator: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") = " + format_rational(p(i, j)));
      }
    }
  }
  const Rational threshold = draw == Draw::Shifted ? Rational(sigma + 1, modulus) : Rational(sigma, modulus);
  Allocation out(p.cols(), -1);
  for (int j = 0; j < p.cols(); ++j) {
    Rational cumulative = 0;
    for (int i = 0; i < p.rows(); ++i) {
      cumulative += p(i, j);
      if (cumulative >= threshold) {
        out[j] = i;
        break;
      }
    }
  }
  return out;
}

Allocation serial_dictatorship(const permute::Permutation& order, const AllocInstance& instance) {
  validate(instance);
  if (order.size() != instance.n_agents()) {
    throw ValidationError("picking order covers " + std::to_string(order.size()) + " agents, instance has " +
                          std::to_string(instance.n_agents()));
  }
  Allocation out(instance.n_items, -1);
  auto taken = no_items(instance.n_items);
  int left = instance.n_items;
  while (left > 0) {
    for (int agent : order) {
      if (left == 0) break;
      const int item = best_remaining(instance.prefs[agent], taken);
      taken[item] = true;
      out[item] = agent;
      --left;
    }
  }
  return out;
}

RpTranscript derand_rp(std::span<const BigInt> bids, const AllocInstance& instance) {
  validate(instance);
  const int n = instance.n_agents();
  if (bids.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("expected " + std::to_string(n) + " bids, got " + std::to_string(bids.size()));
  }
  RpTranscript t;
  t.bids.assign(bids.begin(), bids.end());
  t.seed = modgame::outcome_sum(bids, factorial(n));
  t.order = permute::lehmer_decode(t.seed, n);
  t.allocation = serial_dictatorship(t.order, instance);
  return t;
}

PsTranscript derand_ps(std::span<const BigInt> bids, const AllocInstance& instance, ModulusChoice modulus, Draw draw) {
  validate(instance);
  const int n = instance.n_agents();
  if (bids.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("expected " + std::to_string(n) + " bids, got " + std::to_string(bids.size()));
  }
  PsTranscript t;
  t.assignment = probabilistic_serial(instance).assignment;
  t.modulus = modulus == ModulusChoice::Factorial ? factorial_power(n, instance.n_items)
                                                  : reduced_denominator(t.assignment);
  t.bids.assign(bids.begin(), bids.end());
  t.sigma = modgame::outcome_sum(bids, t.modulus);
  t.draw = draw;
  t.allocation = realize_assignment(t.assignment, t.sigma, t.modulus, draw);
  return t;
}

RationalMatrix rp_distribution_oracle(const AllocInstance& instance) {
  validate(instance);
  const int n = instance.n_agents();
  if (n > kMaxOracleAgents) {
    throw CapacityError("random priority oracle enumerates n! orders; limited to n <= " +
                        std::to_string(kMaxOracleAgents));
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<long long> counts(static_cast<std::size_t>(n) * instance.n_items, 0);
  long long orders = 0;
  do {
    const auto a = serial_dictatorship(permute::Permutation(order), instance);
    for (int j = 0; j < instance.n_items; ++j) ++counts[static_cast<std::size_t>(a[j]) * instance.n_items + j];
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  RationalMatrix p(n, instance.n_items);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < instance.n_items; ++j) {
      p(i, j) = Rational(counts[static_cast<std::size_t>(i) * instance.n_items + j], orders);
    }
  }
  return p;
}

RationalMatrix allocation_matrix(const Allocation& allocation, int n_agents) {
  RationalMatrix p(n_agents, static_cast<int>(allocation.size()));
  for (std::size_t j = 0; j < allocation.size(); ++j) {
    if (allocation[j] >= 0) p(allocation[j], static_cast<int>(j)) = 1;
  }
  return p;
}

Verdict sd_envy_free(const RationalMatrix& p, const AllocInstance& instance) {
  validate(instance);
  check_square(p, instance);
  const int n = instance.n_agents();
  for (int i = 0; i < n; ++i) {
    for (int other = 0; other < n; ++other) {
      if (other == i) continue;
      Rational own = 0;
      Rational theirs = 0;
      for (int t = 0; t < instance.n_items; ++t) {
        const int item = instance.prefs[i][t];
        own += p(i, item);
        theirs += p(other, item);
        if (own < theirs) {
          return Verdict::fail("sd_envy_free",
                               "agent " + std::to_string(i) + " envies agent " + std::to_string(other) +
                                   " on its top " + std::to_string(t + 1) + " items",
                               {{"agent", i}, {"envied", other}, {"prefix", t + 1}});
        }
      }
    }
  }
  return Verdict::pass("sd_envy_free");
}

Verdict sd_efficient(const RationalMatrix& p, const AllocInstance& instance) {
  validate(instance);
  check_square(p, instance);
  const int m = instance.n_items;
  std::vector<std::vector<bool>> edge(m, std::vector<bool>(m, false));
  for (int i = 0; i < instance.n_agents(); ++i) {
    const auto& r = instance.prefs[i];
    for (int hi = 0; hi < m; ++hi) {
      for (int lo = hi + 1; lo < m; ++lo) {
        if (p(i, r[lo]) > 0) edge[r[hi]][r[lo]] = true;
      }
    }
  }
  // Iterative colouring DFS; a back edge closes a cycle.
  std::vector<int> colour(m, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> parent(m, -1);
  std::vector<int> cycle;
  std::function<bool(int)> visit = [&](int a) {
    colour[a] = 1;
    for (int b = 0; b < m; ++b) {
      if (!edge[a][b]) continue;
      if (colour[b] == 1) {
        cycle.push_back(b);
        for (int x = a; x != b; x = parent[x]) cycle.push_back(x);
        cycle.push_back(b);
        std::reverse(cycle.begin(), cycle.end());
        return true;
      }
      if (colour[b] == 0) {
        parent[b] = a;
        if (visit(b)) return true;
      }
    }
    colour[a] = 2;
    return false;
  };
  for (int a = 0; a < m; ++a) {
    if (colour[a] == 0 && visit(a)) {
      return Verdict::fail("sd_efficient", "the dominance relation over items has a cycle", {{"cycle", cycle}});
    }
  }
  return Verdict::pass("sd_efficient");
}

Verdict pareto_efficient(const Allocation& allocation, const AllocInstance& instance) {
  validate(instance);
  const int n = instance.n_agents();
  const int m = instance.n_items;
  if (n > kMaxParetoAgents) {
    throw CapacityError("exhaustive Pareto check is limited to n <= " + std::to_string(kMaxParetoAgents));
  }
  double cases = 1;
  for (int j = 0; j < m; ++j) cases *= n;
  if (cases > 2e6) throw CapacityError("exhaustive Pareto check over n^m reallocations is too large");
  if (static_cast<int>(allocation.size()) != m) throw ValidationError("allocation does not cover every item");

  auto counts_of = [&](const Allocation& a) {
    std::vector<std::vector<int>> counts;
    for (int i = 0; i < n; ++i) {
      auto owned = no_items(m);
      for (int j = 0; j < m; ++j) owned[j] = a[j] == i;
      counts.push_back(prefix_counts(instance.prefs[i], owned));
    }
    return counts;
  };
  const auto current = counts_of(allocation);

  Allocation alt(m, 0);
  for (;;) {
    const auto c = counts_of(alt);
    bool weakly = true;
    bool strictly = false;
    for (int i = 0; i < n && weakly; ++i) {
      for (int t = 0; t < m; ++t) {
        if (c[i][t] < current[i][t]) {
          weakly = false;
          break;
        }
        if (c[i][t] > current[i][t]) strictly = true;
      }
    }
    if (weakly && strictly) {
      return Verdict::fail("pareto_efficient", "another allocation makes some agent better off and none worse",
                           {{"dominating_allocation", alt}});
    }
    int j = 0;
    while (j < m && ++alt[j] == n) alt[j++] = 0;
    if (j == m) break;
  }
  return Verdict::pass("pareto_efficient");
}

}  // namespace derand::alloc
