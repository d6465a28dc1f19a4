#pragma once

#include <stdexcept>
#include <string>

namespace msm {

// Hard caps keeping every combinatorial table inside 64-bit integers.
inline constexpr int kMaxRank = 16;
inline constexpr int kMaxSylvesterOrder = 12;
inline constexpr int kMaxQuantizeRank = 8;
inline constexpr int kMaxBandLimit = 32;

struct RankCapError : std::runtime_error {
  explicit RankCapError(const std::string& what) : std::runtime_error(what) {}
};

struct NotTracelessError : std::runtime_error {
  explicit NotTracelessError(const std::string& what) : std::runtime_error(what) {}
};

struct PairingError : std::runtime_error {
  explicit PairingError(const std::string& what) : std::runtime_error(what) {}
};

struct OrderExceedsSpinError : std::runtime_error {
  explicit OrderExceedsSpinError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroStateError : std::runtime_error {
  explicit ZeroStateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace msm
