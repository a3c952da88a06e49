#include "dint/types.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace dint {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptySpace: return "EmptySpace";
    case Errc::NonpositiveWeight: return "NonpositiveWeight";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::UnknownId: return "UnknownId";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::SingularFiber: return "SingularFiber";
    case Errc::EssentiallyUnbounded: return "EssentiallyUnbounded";
    case Errc::InSpectrum: return "InSpectrum";
    case Errc::EigFailure: return "EigFailure";
    case Errc::ExpFailure: return "ExpFailure";
    case Errc::BadLambda: return "BadLambda";
    case Errc::BadGrid: return "BadGrid";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::InconsistentDims: return "InconsistentDims";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

namespace {

std::size_t thread_count() {
  if (const char* env = std::getenv("DINT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> out = linspace(a, b, n);
  for (double& v : out) v = std::pow(10.0, v);
  return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace dint
