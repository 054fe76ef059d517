#pragma once

#include <cmath>
#include <random>

#include "doctest.h"
#include "l2approx/app.hpp"
#include "l2approx/error.hpp"
#include "l2approx/verify.hpp"

namespace test {

using namespace l2approx;

inline std::mt19937_64 rng() { return std::mt19937_64(seed_from_env()); }

/// Kind of the l2approx::Error thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<ErrorKind> thrown(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline GroupElement el(std::vector<std::int64_t> v) { return GroupElement{std::move(v)}; }

inline RingElement z(std::vector<std::pair<std::int64_t, long>> terms) {
  std::vector<std::pair<std::int64_t, Coefficient>> t;
  for (auto [k, c] : terms) t.emplace_back(k, Coefficient(c));
  return fixtures::laurent(Group::free_abelian(1), t);
}

inline std::string fixture(const std::string& name) { return std::string(L2APPROX_FIXTURE_DIR) + "/" + name; }

}  // namespace test
