#include "binquant/model_text.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>
#include <vector>

#include "binquant/error.hpp"

namespace binquant {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues split_params(std::string_view body) {
  KeyValues out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(item), "model: expected key=value, got '" + std::string(item) + "'");
    }
    std::string key(trim(item.substr(0, eq)));
    if (key.empty()) throw ParseError("", "model: empty parameter name");
    if (out.contains(key)) throw ParseError(key, "model: duplicate key '" + key + "'");
    out.emplace(std::move(key), std::string(trim(item.substr(eq + 1))));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

double take(KeyValues& kv, const std::string& key, const std::string& family) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw ParseError(key, "model '" + family + "': missing key '" + key + "'");
  }
  const double v = parse_double(it->second, key);
  kv.erase(it);
  return v;
}

}  // namespace

double parse_double(std::string_view text, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(std::string(key),
                     "invalid number '" + std::string(text) + "' for key '" + std::string(key) + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

NoiseModel parse_model(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("model", "model: expected '<family>:<key>=<value>,...', got '" + std::string(text) + "'");
  }
  const std::string family(trim(text.substr(0, colon)));
  KeyValues kv = split_params(text.substr(colon + 1));

  const auto expect_keys = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : kv) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ParseError(key, "model '" + family + "': unknown key '" + key + "'");
      }
    }
  };

  NoiseModel::Params params;
  if (family == "gaussian" || family == "cauchy" || family == "laplacian") {
    expect_keys({"delta"});
    const double delta = take(kv, "delta", family);
    if (family == "gaussian") params = Gaussian{delta};
    if (family == "cauchy") params = Cauchy{delta};
    if (family == "laplacian") params = Laplacian{delta};
  } else if (family == "hybrid") {
    expect_keys({"alpha", "sigma"});
    const double alpha = take(kv, "alpha", family);
    const double sigma = take(kv, "sigma", family);
    params = HybridUniformGaussian{alpha, sigma};
  } else if (family == "ggd") {
    expect_keys({"beta", "delta"});
    const double beta = take(kv, "beta", family);
    const double delta = take(kv, "delta", family);
    params = Ggd{beta, delta};
  } else {
    throw ParseError("model", "model: unknown family '" + family + "'");
  }
  return NoiseModel(params);
}

std::string to_string(const NoiseModel& model) {
  return std::visit(
      Overloaded{
          [](const Gaussian& m) { return "gaussian:delta=" + format_double(m.delta); },
          [](const Cauchy& m) { return "cauchy:delta=" + format_double(m.delta); },
          [](const Laplacian& m) { return "laplacian:delta=" + format_double(m.delta); },
          [](const HybridUniformGaussian& m) {
            return "hybrid:alpha=" + format_double(m.alpha) + ",sigma=" + format_double(m.sigma);
          },
          [](const Ggd& m) {
            return "ggd:beta=" + format_double(m.beta) + ",delta=" + format_double(m.delta);
          },
      },
      model.params());
}

}  // namespace binquant
