#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>

#include "gauntlet/core/clock.hpp"
#include "gauntlet/core/wire.hpp"

namespace gauntlet::service {

/// Response tokens drawn from a ChaCha20 keystream keyed by the seed:
/// 64 hex characters, reproducible per seed, unpredictable without it.
class TokenMinter {
 public:
  explicit TokenMinter(std::uint64_t seed);
  ~TokenMinter();
  TokenMinter(const TokenMinter&) = delete;
  TokenMinter& operator=(const TokenMinter&) = delete;

  std::string mint();

 private:
  struct Cipher;
  std::unique_ptr<Cipher> cipher_;
};

struct TokenRecord {
  std::string session_id;
  Millis issued_at{0};
  bool consumed = false;
};

/// Issued tokens and the siteverify check. Tokens are single-use.
class TokenStore {
 public:
  TokenStore(std::string site_secret, Millis ttl);

  void insert(const std::string& token, std::string session_id, Millis now);
  /// Never throws. Marks the token consumed on success. A failed check
  /// changes nothing.
  wire::VerifyResponse verify(std::string_view secret, std::string_view token, Millis now);

  [[nodiscard]] std::size_t size() const { return tokens_.size(); }
  [[nodiscard]] std::size_t consumed() const;

 private:
  std::string secret_;
  Millis ttl_;
  std::unordered_map<std::string, TokenRecord> tokens_;
};

}  // namespace gauntlet::service
