#include "snawb/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>

#include "snawb/error.hpp"

namespace snawb {

namespace {

std::string to_hex(const unsigned char* digest, unsigned int length) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kDigits[digest[i] >> 4]);
    out.push_back(kDigits[digest[i] & 0x0f]);
  }
  return out;
}

EVP_MD_CTX* as_ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  return to_hex(digest.data(), length);
}

ContentHasher::ContentHasher() : ctx_(EVP_MD_CTX_new()) {
  if (ctx_ == nullptr || EVP_DigestInit_ex(as_ctx(ctx_), EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(as_ctx(ctx_));
    throw Error("sha256 init failed");
  }
}

ContentHasher::~ContentHasher() { EVP_MD_CTX_free(as_ctx(ctx_)); }

ContentHasher& ContentHasher::field(std::string_view value) {
  std::array<unsigned char, 8> prefix{};
  auto size = static_cast<std::uint64_t>(value.size());
  for (int i = 0; i < 8; ++i) prefix[static_cast<std::size_t>(i)] = static_cast<unsigned char>(size >> (8 * i));
  EVP_DigestUpdate(as_ctx(ctx_), prefix.data(), prefix.size());
  EVP_DigestUpdate(as_ctx(ctx_), value.data(), value.size());
  return *this;
}

ContentHasher& ContentHasher::field(long long value) { return field(std::to_string(value)); }

std::string ContentHasher::hex() {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(as_ctx(ctx_), digest.data(), &length);
  EVP_DigestInit_ex(as_ctx(ctx_), EVP_sha256(), nullptr);
  return to_hex(digest.data(), length);
}

}  // namespace snawb
