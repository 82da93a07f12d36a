#include <charconv>
#include <cmath>

#include "mtsaug/augment.hpp"
#include "mtsaug/error.hpp"

namespace mtsaug {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_number(std::string_view text, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, "augmenter parameter '" + std::string(key) + "' is not a number: '" +
                                                std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

void require_ratio(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorKind::RatioOutOfRange, std::string(what) + " must lie in (0, 1), got " + num(r));
  }
}

}  // namespace

std::string AugmenterSpec::technique() const {
  return std::visit(Overloaded{
                        [](const NoiseParams&) { return std::string("noise"); },
                        [](const SmoteParams&) { return std::string("smote"); },
                        [](const GaussianCovParams&) { return std::string("gaussian-cov"); },
                        [](const ScaleParams&) { return std::string("scale"); },
                        [](const RotateParams&) { return std::string("rotate"); },
                        [](const SliceParams&) { return std::string("slice"); },
                        [](const PermuteParams&) { return std::string("permute"); },
                        [](const TimeMaskParams&) { return std::string("time-mask"); },
                        [](const FreqMaskParams&) { return std::string("freq-mask"); },
                        [](const WindowWarpParams&) { return std::string("window-warp"); },
                    },
                    kind);
}

std::string AugmenterSpec::label() const {
  return std::visit(
      Overloaded{
          [](const NoiseParams& p) { return "noise_" + num(p.level); },
          [](const SmoteParams&) { return std::string("smote"); },
          [](const GaussianCovParams& p) {
            return p.shrinkage == GaussianCovParams{}.shrinkage ? std::string("gaussian-cov")
                                                                : "gaussian-cov:shrinkage=" + num(p.shrinkage);
          },
          [](const ScaleParams& p) { return "scale:low=" + num(p.low) + ":high=" + num(p.high); },
          [](const RotateParams&) { return std::string("rotate"); },
          [](const SliceParams& p) { return "slice:ratio=" + num(p.ratio); },
          [](const PermuteParams& p) { return "permute:segments=" + std::to_string(p.segments); },
          [](const TimeMaskParams& p) {
            return "time-mask:ratio=" + num(p.ratio) + (p.fill == MaskFill::ChannelMean ? ":fill=mean" : "");
          },
          [](const FreqMaskParams& p) { return "freq-mask:ratio=" + num(p.ratio); },
          [](const WindowWarpParams& p) {
            std::string s = "window-warp:ratio=" + num(p.window_ratio) + ":scales=";
            for (std::size_t i = 0; i < p.scales.size(); ++i) s += (i ? "/" : "") + num(p.scales[i]);
            return s;
          },
      },
      kind);
}

void AugmenterSpec::validate() const {
  std::visit(Overloaded{
                 [](const NoiseParams& p) {
                   if (!(p.level > 0.0)) throw Error(ErrorKind::InvalidArgument, "noise level must be positive");
                 },
                 [](const SmoteParams&) {},
                 [](const GaussianCovParams& p) {
                   if (!(p.shrinkage >= 0.0 && p.shrinkage <= 1.0)) {
                     throw Error(ErrorKind::RatioOutOfRange, "shrinkage must lie in [0, 1]");
                   }
                 },
                 [](const ScaleParams& p) {
                   if (!(p.low > 0.0 && p.low <= p.high)) {
                     throw Error(ErrorKind::InvalidArgument, "scale range must satisfy 0 < low <= high");
                   }
                 },
                 [](const RotateParams&) {},
                 [](const SliceParams& p) { require_ratio(p.ratio, "slice ratio"); },
                 [](const PermuteParams& p) {
                   if (p.segments < 2) throw Error(ErrorKind::InvalidArgument, "permute needs at least 2 segments");
                 },
                 [](const TimeMaskParams& p) { require_ratio(p.ratio, "time-mask ratio"); },
                 [](const FreqMaskParams& p) { require_ratio(p.ratio, "freq-mask ratio"); },
                 [](const WindowWarpParams& p) {
                   require_ratio(p.window_ratio, "window-warp ratio");
                   if (p.scales.empty()) throw Error(ErrorKind::InvalidArgument, "window-warp needs a scale");
                   for (double s : p.scales) {
                     if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "window-warp scales must be positive");
                   }
                 },
             },
             kind);
}

AugmenterSpec AugmenterSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  std::string_view name = parts.front();
  AugmenterSpec spec{NoiseParams{}};

  if (name.starts_with("noise_")) {
    spec.kind = NoiseParams{parse_number(name.substr(6), "level")};
  } else if (name == "noise") {
    spec.kind = NoiseParams{};
  } else if (name == "smote") {
    spec.kind = SmoteParams{};
  } else if (name == "gaussian-cov" || name == "gaussian_cov") {
    spec.kind = GaussianCovParams{};
  } else if (name == "scale") {
    spec.kind = ScaleParams{};
  } else if (name == "rotate") {
    spec.kind = RotateParams{};
  } else if (name == "slice") {
    spec.kind = SliceParams{};
  } else if (name == "permute") {
    spec.kind = PermuteParams{};
  } else if (name == "time-mask" || name == "time_mask") {
    spec.kind = TimeMaskParams{};
  } else if (name == "freq-mask" || name == "freq_mask") {
    spec.kind = FreqMaskParams{};
  } else if (name == "window-warp" || name == "window_warp") {
    spec.kind = WindowWarpParams{};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown augmenter '" + std::string(name) + "'");
  }

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidArgument, "augmenter option '" + std::string(parts[i]) + "' is not key=value");
    }
    const std::string_view key = parts[i].substr(0, eq);
    const std::string_view value = parts[i].substr(eq + 1);
    bool known = false;
    std::visit(Overloaded{
                   [&](NoiseParams& p) {
                     if (key == "level") p.level = parse_number(value, key), known = true;
                   },
                   [&](SmoteParams&) {},
                   [&](GaussianCovParams& p) {
                     if (key == "shrinkage") p.shrinkage = parse_number(value, key), known = true;
                   },
                   [&](ScaleParams& p) {
                     if (key == "low") p.low = parse_number(value, key), known = true;
                     if (key == "high") p.high = parse_number(value, key), known = true;
                   },
                   [&](RotateParams&) {},
                   [&](SliceParams& p) {
                     if (key == "ratio") p.ratio = parse_number(value, key), known = true;
                   },
                   [&](PermuteParams& p) {
                     if (key == "segments") {
                       const double v = parse_number(value, key);
                       if (v < 0 || v != std::floor(v)) {
                         throw Error(ErrorKind::InvalidArgument, "segments must be a whole number");
                       }
                       p.segments = static_cast<std::size_t>(v);
                       known = true;
                     }
                   },
                   [&](TimeMaskParams& p) {
                     if (key == "ratio") p.ratio = parse_number(value, key), known = true;
                     if (key == "fill") {
                       if (value == "zero") p.fill = MaskFill::Zero;
                       else if (value == "mean") p.fill = MaskFill::ChannelMean;
                       else throw Error(ErrorKind::InvalidArgument, "time-mask fill must be zero or mean");
                       known = true;
                     }
                   },
                   [&](FreqMaskParams& p) {
                     if (key == "ratio") p.ratio = parse_number(value, key), known = true;
                   },
                   [&](WindowWarpParams& p) {
                     if (key == "ratio") p.window_ratio = parse_number(value, key), known = true;
                     if (key == "scales") {
                       p.scales.clear();
                       for (auto tok : split(value, '/')) p.scales.push_back(parse_number(tok, key));
                       known = true;
                     }
                   },
               },
               spec.kind);
    if (!known) {
      throw Error(ErrorKind::InvalidArgument,
                  "option '" + std::string(key) + "' does not apply to " + spec.technique());
    }
  }
  spec.validate();
  return spec;
}

}  // namespace mtsaug
