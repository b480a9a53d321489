#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gauntlet/core/wire.hpp"
#include "gauntlet/runner/config.hpp"

namespace gauntlet::runner {

/// A publisher's sign-up form guarded by the CAPTCHA. An account is stored
/// only when the service confirms the response token server-side.
class RegistrationSite {
 public:
  RegistrationSite(wire::Transport& captcha, std::string secret) : captcha_(captcha), secret_(std::move(secret)) {}

  struct FormResult {
    bool created = false;
    std::vector<std::string> error_codes;
  };

  /// An empty token is rejected without contacting the service.
  FormResult submit(const std::string& username, const std::string& password, const std::string& token);

  [[nodiscard]] const std::vector<std::string>& accounts() const { return accounts_; }
  [[nodiscard]] std::size_t rejected() const { return rejected_; }

 private:
  wire::Transport& captcha_;
  std::string secret_;
  std::vector<std::string> accounts_;
  std::size_t rejected_ = 0;
};

struct RegistrationAttempt {
  solver::SessionRecord session;
  bool account_created = false;
  std::vector<std::string> error_codes;
};

struct RegistrationReport {
  std::string difficulty;
  std::uint64_t attempts = 0;
  std::uint64_t accounts = 0;
  std::uint64_t rejected = 0;  // form submissions whose token did not verify
  std::uint64_t blocked = 0;
  std::uint64_t errors = 0;
  std::vector<RegistrationAttempt> attempts_log;
};

/// Fills the form `run.sessions` times in a row, one solve per attempt,
/// pausing `run.session_gap` between attempts.
RegistrationReport registration_demo(const ExperimentConfig& config, bool over_network = false);

nlohmann::json to_json(const RegistrationAttempt& a);
nlohmann::json summary_json(const RegistrationReport& r);

}  // namespace gauntlet::runner
