#pragma once

#include <string>
#include <string_view>

namespace snawb {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Incremental SHA-256 over length-prefixed fields, so that ("ab","c") and
/// ("a","bc") hash differently.
class ContentHasher {
 public:
  ContentHasher();
  ~ContentHasher();
  ContentHasher(const ContentHasher&) = delete;
  ContentHasher& operator=(const ContentHasher&) = delete;

  ContentHasher& field(std::string_view value);
  ContentHasher& field(long long value);

  std::string hex();

 private:
  void* ctx_;
};

}  // namespace snawb
