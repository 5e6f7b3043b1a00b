#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace rov {

using Asn = std::uint32_t;

inline std::uint32_t prefix_mask(std::uint8_t length) {
  return length == 0 ? 0u : 0xFFFFFFFFu << (32u - length);
}

inline std::string format_ipv4(std::uint32_t ip) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (ip >> 24) & 0xFF,
                (ip >> 16) & 0xFF, (ip >> 8) & 0xFF, ip & 0xFF);
  return buf;
}

inline std::optional<std::uint32_t> parse_ipv4(const std::string& s) {
  std::uint32_t ip = 0;
  int octet = 0, value = -1;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      value = (value < 0 ? 0 : value) * 10 + (c - '0');
      if (value > 255) return std::nullopt;
    } else if (c == '.') {
      if (value < 0 || octet >= 3) return std::nullopt;
      ip = (ip << 8) | static_cast<std::uint32_t>(value);
      value = -1;
      ++octet;
    } else {
      return std::nullopt;
    }
  }
  if (octet != 3 || value < 0) return std::nullopt;
  return (ip << 8) | static_cast<std::uint32_t>(value);
}

// RFC 1918 space; treated as unmappable by the ingest pipeline.
inline bool is_private_ipv4(std::uint32_t ip) {
  return (ip & 0xFF000000u) == 0x0A000000u ||   // 10/8
         (ip & 0xFFF00000u) == 0xAC100000u ||   // 172.16/12
         (ip & 0xFFFF0000u) == 0xC0A80000u;     // 192.168/16
}

// IPv4 prefix with all host bits zero.
struct Prefix {
  std::uint32_t base = 0;
  std::uint8_t length = 0;

  Prefix() = default;
  Prefix(std::uint32_t base_address, std::uint8_t len)
      : base(base_address & prefix_mask(len)), length(len) {
    if (len > 32) throw std::invalid_argument("prefix length > 32");
  }

  bool contains(std::uint32_t ip) const {
    return (ip & prefix_mask(length)) == base;
  }

  bool operator==(const Prefix& o) const {
    return base == o.base && length == o.length;
  }
  bool operator!=(const Prefix& o) const { return !(*this == o); }
  bool operator<(const Prefix& o) const {
    if (base != o.base) return base < o.base;
    return length < o.length;
  }

  std::string str() const {
    return format_ipv4(base) + "/" + std::to_string(length);
  }

  static std::optional<Prefix> parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return std::nullopt;
    auto addr = parse_ipv4(s.substr(0, slash));
    if (!addr) return std::nullopt;
    int len;
    try {
      size_t pos = 0;
      len = std::stoi(s.substr(slash + 1), &pos);
      if (pos != s.size() - slash - 1) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (len < 0 || len > 32) return std::nullopt;
    if ((*addr & ~prefix_mask(static_cast<std::uint8_t>(len))) != 0)
      return std::nullopt;  // host bits set
    return Prefix(*addr, static_cast<std::uint8_t>(len));
  }
};

}  // namespace rov
