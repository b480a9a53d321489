#include "gauntlet/service/tokens.hpp"

#include <array>

#include <openssl/evp.h>

#include "gauntlet/core/error.hpp"
#include "gauntlet/core/rng.hpp"

namespace gauntlet::service {

struct TokenMinter::Cipher {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~Cipher() { EVP_CIPHER_CTX_free(ctx); }
};

TokenMinter::TokenMinter(std::uint64_t seed) : cipher_(std::make_unique<Cipher>()) {
  std::array<unsigned char, 32> key{};
  for (std::size_t w = 0; w < 4; ++w) {
    const std::uint64_t v = mix_seed(seed, w + 1);
    for (std::size_t b = 0; b < 8; ++b) key[w * 8 + b] = static_cast<unsigned char>(v >> (8 * b));
  }
  const std::array<unsigned char, 16> iv{};  // block counter 0, nonce 0
  cipher_->ctx = EVP_CIPHER_CTX_new();
  if (cipher_->ctx == nullptr || EVP_EncryptInit_ex(cipher_->ctx, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1) {
    throw Error("ChaCha20 initialisation failed");
  }
}

TokenMinter::~TokenMinter() = default;

std::string TokenMinter::mint() {
  std::array<unsigned char, 32> zeros{};
  std::array<unsigned char, 32> stream{};
  int len = 0;
  if (EVP_EncryptUpdate(cipher_->ctx, stream.data(), &len, zeros.data(), static_cast<int>(zeros.size())) != 1 ||
      len != static_cast<int>(stream.size())) {
    throw Error("ChaCha20 keystream failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (unsigned char c : stream) {
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 0xF]);
  }
  return out;
}

TokenStore::TokenStore(std::string site_secret, Millis ttl) : secret_(std::move(site_secret)), ttl_(ttl) {
  if (secret_.empty()) throw ConfigError("site secret must not be empty");
  if (ttl_.count() <= 0) throw ConfigError("token ttl must be > 0");
}

void TokenStore::insert(const std::string& token, std::string session_id, Millis now) {
  if (!tokens_.emplace(token, TokenRecord{std::move(session_id), now, false}).second) {
    throw Error("token collision");
  }
}

wire::VerifyResponse TokenStore::verify(std::string_view secret, std::string_view token, Millis now) {
  if (secret != secret_) return {false, {"invalid-secret"}};
  const auto it = tokens_.find(std::string(token));
  if (it == tokens_.end()) return {false, {"invalid-token"}};
  if (it->second.consumed) return {false, {"token-consumed"}};
  if (now - it->second.issued_at >= ttl_) return {false, {"token-expired"}};
  it->second.consumed = true;
  return {true, {}};
}

std::size_t TokenStore::consumed() const {
  std::size_t n = 0;
  for (const auto& [_, r] : tokens_) n += r.consumed ? 1 : 0;
  return n;
}

}  // namespace gauntlet::service
