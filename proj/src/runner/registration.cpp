#include "gauntlet/runner/registration.hpp"

#include "gauntlet/runner/harness.hpp"
#include "gauntlet/solver/client.hpp"

namespace gauntlet::runner {

RegistrationSite::FormResult RegistrationSite::submit(const std::string& username, const std::string& password,
                                                      const std::string& token) {
  FormResult result;
  if (username.empty() || password.empty()) throw Error("username and password are required");
  if (token.empty()) {
    result.error_codes = {"missing-input-response"};
  } else {
    const auto verdict = solver::ServiceClient(captcha_).siteverify(secret_, token);
    result.created = verdict.success;
    result.error_codes = verdict.error_codes;
  }
  if (result.created) {
    accounts_.push_back(username);
  } else {
    ++rejected_;
  }
  return result;
}

RegistrationReport registration_demo(const ExperimentConfig& config, bool over_network) {
  Runtime rt(config.service, config.simulated_clock, over_network, config.network);
  RegistrationSite site(rt.transport(), config.service.site_secret);
  const auto labeler = make_labeler(config);
  solver::DedupCache cache(config.tau);
  // The site, not the bot, verifies the token.
  const auto solver_config = make_solver_config(config, config.profile, false);

  RegistrationReport report;
  report.difficulty = std::string(service::to_string(config.service.difficulty));
  std::vector<RegistrationAttempt> attempts;
  SessionBatch batch{config.run.sessions, 1, config.run.session_gap, 0};
  auto records = run_sessions(rt, solver_config, *labeler, cache, batch, config.seed,
                              [&](solver::SessionRecord& r, Millis) {
                                RegistrationAttempt a;
                                if (r.outcome == solver::Outcome::Pass) {
                                  const auto name = "user" + std::to_string(r.index);
                                  auto form = site.submit(name, "pw-" + name, r.token);
                                  a.account_created = form.created;
                                  a.error_codes = std::move(form.error_codes);
                                  r.verified = form.created;
                                }
                                a.session = r;
                                attempts.push_back(std::move(a));
                              });
  std::ranges::sort(attempts, {}, [](const RegistrationAttempt& a) { return a.session.index; });
  for (const auto& a : attempts) {
    ++report.attempts;
    if (a.account_created) ++report.accounts;
    if (a.session.outcome == solver::Outcome::Pass && !a.account_created) ++report.rejected;
    if (a.session.outcome == solver::Outcome::Blocked) ++report.blocked;
    if (a.session.outcome == solver::Outcome::Error) ++report.errors;
  }
  report.attempts_log = std::move(attempts);
  return report;
}

nlohmann::json to_json(const RegistrationAttempt& a) {
  auto j = solver::to_json(a.session);
  j["account_created"] = a.account_created;
  j["site_error_codes"] = a.error_codes;
  return j;
}

nlohmann::json summary_json(const RegistrationReport& r) {
  return {{"difficulty", r.difficulty}, {"attempts", r.attempts}, {"accounts", r.accounts},
          {"rejected", r.rejected},     {"blocked", r.blocked},   {"errors", r.errors}};
}

}  // namespace gauntlet::runner
