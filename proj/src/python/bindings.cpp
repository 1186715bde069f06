#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "derand/alloc.hpp"
#include "derand/error.hpp"
#include "derand/instance.hpp"
#include "derand/modgame.hpp"
#include "derand/peer.hpp"
#include "derand/permute.hpp"
#include "derand/simple_mechs.hpp"
#include "derand/tasks.hpp"
#include "derand/verify.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// Python int <-> BigInt through decimal text.
template <>
struct type_caster<derand::BigInt> {
  PYBIND11_TYPE_CASTER(derand::BigInt, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    value = derand::parse_bigint(std::string(py::str(src)));
    return true;
  }

  static handle cast(const derand::BigInt& v, return_value_policy, handle) {
    return PyLong_FromString(v.str().c_str(), nullptr, 10);
  }
};

// fractions.Fraction (or int) <-> Rational.
template <>
struct type_caster<derand::Rational> {
  PYBIND11_TYPE_CASTER(derand::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    const auto fraction = module_::import("fractions").attr("Fraction");
    if (!PyLong_Check(src.ptr()) && !isinstance(src, fraction)) return false;
    const object f = fraction(src);
    value = derand::Rational(derand::parse_bigint(std::string(py::str(f.attr("numerator")))),
                             derand::parse_bigint(std::string(py::str(f.attr("denominator")))));
    return true;
  }

  static handle cast(const derand::Rational& v, return_value_policy, handle) {
    const auto fraction = module_::import("fractions").attr("Fraction");
    return fraction(py::int_(reinterpret_steal<object>(PyLong_FromString(derand::numerator(v).str().c_str(), nullptr, 10))),
                    py::int_(reinterpret_steal<object>(PyLong_FromString(derand::denominator(v).str().c_str(), nullptr, 10))))
        .release();
  }
};

}  // namespace pybind11::detail

namespace {

using namespace derand;

modgame::Profile to_profile(const std::vector<std::vector<Rational>>& rows) {
  modgame::Profile p;
  for (const auto& r : rows) p.emplace_back(r);
  return p;
}

py::dict task_outcome(const tasks::TaskOutcome& o) {
  py::dict d;
  d["a1"] = o.a1;
  d["a2"] = o.a2;
  d["p1"] = o.p1;
  d["p2"] = o.p2;
  return d;
}

peer::PeerProfile peer_profile(const std::vector<std::vector<int>>& prefs) {
  peer::PeerProfile profile{prefs};
  peer::validate(profile);
  return profile;
}

alloc::AllocInstance alloc_instance(const std::vector<std::vector<int>>& prefs) {
  alloc::AllocInstance instance{prefs, prefs.empty() ? 0 : static_cast<int>(prefs[0].size())};
  alloc::validate(instance);
  return instance;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mechanisms whose randomness comes from a modular arithmetic game.";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "outcome_sum",
      [](const std::vector<BigInt>& plays, const BigInt& modulus) { return modgame::outcome_sum(plays, modulus); },
      py::arg("plays"), py::arg("modulus"));
  m.def(
      "outcome_distribution",
      [](const std::vector<std::vector<Rational>>& profile, int modulus) {
        return modgame::outcome_distribution(to_profile(profile), modulus).weights();
      },
      py::arg("profile"), py::arg("modulus"));
  m.def(
      "verify_nash",
      [](const std::vector<std::vector<Rational>>& utilities, const std::vector<std::vector<Rational>>& profile) {
        const int modulus = utilities.empty() ? 0 : static_cast<int>(utilities[0].size());
        return modgame::verify_nash(modgame::ModGame(modulus, utilities), to_profile(profile)).to_json().dump();
      },
      py::arg("utilities"), py::arg("profile"));

  m.def(
      "lehmer_decode", [](const BigInt& code, int n) { return permute::lehmer_decode(code, n).values(); },
      py::arg("code"), py::arg("n"));
  m.def(
      "lehmer_encode", [](const std::vector<int>& perm) { return permute::lehmer_encode(permute::Permutation(perm)); },
      py::arg("permutation"));
  m.def(
      "compact_priority_order",
      [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        return permute::compact_priority_order({a, b}, static_cast<int>(a.size())).values();
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "derand_dictator",
      [](const std::vector<std::int64_t>& integers, const std::vector<std::string>& candidates) {
        if (integers.size() != candidates.size()) throw ValidationError("one candidate per integer required");
        std::vector<simple::DictatorBallot> b;
        for (std::size_t i = 0; i < integers.size(); ++i) b.push_back({integers[i], candidates[i]});
        return simple::derand_dictator(b);
      },
      py::arg("integers"), py::arg("candidates"));
  m.def(
      "derand_lrm",
      [](const std::vector<std::int64_t>& integers, const std::vector<Rational>& positions) {
        if (integers.size() != positions.size()) throw ValidationError("one position per integer required");
        std::vector<simple::FacilityReport> r;
        for (std::size_t i = 0; i < integers.size(); ++i) r.push_back({integers[i], positions[i]});
        return simple::derand_lrm(r);
      },
      py::arg("integers"), py::arg("positions"));
  m.def(
      "lrm_expected_ratio", [](const std::vector<Rational>& positions) { return simple::lrm_expected_ratio(positions); },
      py::arg("positions"));

  m.def(
      "biased_min_work",
      [](const std::vector<Rational>& t1, const std::vector<Rational>& t2, const std::vector<int>& bits) {
        return task_outcome(tasks::biased_min_work(tasks::TaskInstance{{t1, t2}, std::nullopt}, bits));
      },
      py::arg("t1"), py::arg("t2"), py::arg("bits"));
  m.def(
      "expected_makespan_uniform",
      [](const std::vector<Rational>& t1, const std::vector<Rational>& t2) {
        return tasks::expected_makespan_uniform(tasks::TaskInstance{{t1, t2}, std::nullopt});
      },
      py::arg("t1"), py::arg("t2"));
  m.def(
      "optimal_makespan",
      [](const std::vector<Rational>& t1, const std::vector<Rational>& t2) { return tasks::optimal_makespan({t1, t2}); },
      py::arg("t1"), py::arg("t2"));

  m.def(
      "spe_winner_linear",
      [](const std::vector<int>& order, const std::vector<std::vector<int>>& prefs) {
        return peer::spe_winner_linear(permute::Permutation(order), peer_profile(prefs));
      },
      py::arg("order"), py::arg("prefs"));
  m.def(
      "spe_winner_oracle",
      [](const std::vector<int>& order, const std::vector<std::vector<int>>& prefs) {
        return peer::spe_winner_oracle(permute::Permutation(order), peer_profile(prefs));
      },
      py::arg("order"), py::arg("prefs"));
  m.def(
      "derand_rse",
      [](const std::vector<BigInt>& bids, const std::vector<std::vector<int>>& prefs) {
        const auto r = peer::derand_rse(bids, peer_profile(prefs));
        py::dict d;
        d["seed"] = r.seed;
        d["order"] = r.order.values();
        d["winner"] = r.winner;
        return d;
      },
      py::arg("bids"), py::arg("prefs"));
  m.def(
      "partition_winner",
      [](const std::vector<std::vector<int>>& prefs, const std::vector<int>& bits) {
        return peer::partition_winner(peer_profile(prefs), bits).winner;
      },
      py::arg("prefs"), py::arg("parity_bits"));

  m.def(
      "probabilistic_serial",
      [](const std::vector<std::vector<int>>& prefs) {
        return alloc::probabilistic_serial(alloc_instance(prefs)).assignment.to_rows();
      },
      py::arg("prefs"));
  m.def(
      "derand_rp",
      [](const std::vector<BigInt>& bids, const std::vector<std::vector<int>>& prefs) {
        return alloc::derand_rp(bids, alloc_instance(prefs)).allocation;
      },
      py::arg("bids"), py::arg("prefs"));
  m.def(
      "rp_distribution_oracle",
      [](const std::vector<std::vector<int>>& prefs) {
        return alloc::rp_distribution_oracle(alloc_instance(prefs)).to_rows();
      },
      py::arg("prefs"));

  // Instance-file level entry points exchange JSON text.
  m.def(
      "run_instance", [](const std::string& text) { return io::run(io::parse_instance(text)).dump(); }, py::arg("text"));
  m.def(
      "exact_dist", [](const std::string& text) { return io::exact_dist(io::parse_instance(text)).dump(); },
      py::arg("text"));
  m.def(
      "simulate",
      [](const std::string& text, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
        const auto f = io::parse_instance(text);
        const auto mech = io::sim_mechanism(f);
        const auto policies = io::effective_policies(f);
        py::gil_scoped_release release;
        return io::to_json(sim::run_trials(mech, policies, trials, seed, std::nullopt, workers)).dump();
      },
      py::arg("text"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1);
  m.def(
      "run_suite",
      [](const std::string& name, std::optional<int> n, std::optional<std::uint64_t> samples, std::uint64_t seed) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& v : verify::run_suite(name, {n, samples, seed})) out.push_back(v.to_json());
        return out.dump();
      },
      py::arg("name"), py::arg("n") = std::nullopt, py::arg("samples") = std::nullopt, py::arg("seed") = 0);
  m.attr("suite_names") = verify::suite_names();
}
