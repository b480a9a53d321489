#include "gauntlet/hashkit/digest.hpp"

#include <cstring>
#include <memory>

#include <openssl/evp.h>

#include "gauntlet/core/error.hpp"

namespace gauntlet::hashkit {

std::string Digest128::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::size_t Digest128Hash::operator()(const Digest128& d) const noexcept {
  std::uint64_t v = 0;
  std::memcpy(&v, d.bytes.data(), sizeof v);
  return static_cast<std::size_t>(v);
}

Digest128 md5(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  Digest128 d;
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_md5(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), d.bytes.data(), &len) != 1 || len != d.bytes.size()) {
    throw Error("MD5 computation failed");
  }
  return d;
}

Digest128 exact_hash(const GrayImage& image) { return md5(encode_pgm(image)); }

}  // namespace gauntlet::hashkit
