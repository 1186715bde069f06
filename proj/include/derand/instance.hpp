#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "derand/alloc.hpp"
#include "derand/error.hpp"
#include "derand/peer.hpp"
#include "derand/school.hpp"
#include "derand/sim.hpp"
#include "derand/simple_mechs.hpp"
#include "derand/tasks.hpp"

namespace derand::io {

/// Parse or validation failure; path is a JSON pointer to the bad field.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error((path.empty() ? std::string("/") : path) + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Domain { Dictator, Lrm, Tasks, Peer, School, Alloc };

const char* domain_name(Domain d);

struct DictatorPayload {
  std::vector<simple::DictatorBallot> ballots;
  bool operator==(const DictatorPayload&) const = default;
};

struct LrmPayload {
  std::vector<simple::FacilityReport> reports;
  bool operator==(const LrmPayload&) const = default;
};

struct TasksPayload {
  tasks::TaskInstance instance;
  std::vector<std::array<int, 2>> bit_pairs;
  bool operator==(const TasksPayload&) const = default;
};

enum class PeerRule { Rse, Partition };

struct PeerPayload {
  PeerRule rule = PeerRule::Rse;
  peer::PeerProfile profile;
  std::vector<BigInt> bids;                  // rse
  std::optional<std::vector<int>> choices;   // rse, explicit second stage
  std::vector<int> parity_bits;              // partition
  bool operator==(const PeerPayload&) const = default;
};

struct SchoolPayload {
  school::SchoolInstance instance;
  school::SchoolBids bids;
  bool operator==(const SchoolPayload&) const = default;
};

enum class AllocMode { Ps, Rp };

struct AllocPayload {
  alloc::AllocInstance instance;
  AllocMode mode = AllocMode::Rp;
  std::vector<BigInt> bids;
  std::optional<BigInt> sigma;  // ps: the game result given directly instead of bids
  alloc::ModulusChoice modulus = alloc::ModulusChoice::Factorial;
  alloc::Draw draw = alloc::Draw::Shifted;
  bool operator==(const AllocPayload&) const = default;
};

using Payload = std::variant<DictatorPayload, LrmPayload, TasksPayload, PeerPayload, SchoolPayload, AllocPayload>;

struct InstanceFile {
  Payload payload;
  std::vector<sim::AgentPolicy> policies;  // empty: everyone uniform and sincere
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;

  Domain domain() const { return static_cast<Domain>(payload.index()); }
  bool operator==(const InstanceFile&) const = default;
};

/// Parses and validates; throws ParseError with the offending path.
InstanceFile parse_instance(std::string_view text);
InstanceFile parse_instance_json(const nlohmann::json& document);

/// Canonical JSON form; parse_instance(to_json(x)) == x.
nlohmann::json to_json(const InstanceFile& instance);

/// Runs the mechanism: {"domain", "outcome", "transcript"}. Rationals are
/// "num/den" strings; the output is a pure function of the input.
nlohmann::json run(const InstanceFile& instance);

/// Policies padded to one per agent (uniform, sincere).
std::vector<sim::AgentPolicy> effective_policies(const InstanceFile& instance);

/// The instance's mechanism wrapped for the simulator.
sim::SimMechanism sim_mechanism(const InstanceFile& instance);

/// Exact distribution of one round of the embedded game under the
/// instance's policies, and of the mechanism outcome when small enough.
nlohmann::json exact_dist(const InstanceFile& instance);

nlohmann::json to_json(const sim::TrialReport& report);
nlohmann::json to_json(const alloc::RationalMatrix& p);
nlohmann::json to_json(const school::Matching& m);

}  // namespace derand::io
