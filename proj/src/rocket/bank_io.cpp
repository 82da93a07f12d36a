#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "mtsaug/error.hpp"
#include "mtsaug/rocket.hpp"

namespace mtsaug {
namespace {

constexpr const char* kMagic = "mtsaug-kernel-bank";
constexpr int kVersion = 1;

std::string hex(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, ptr);
}

double unhex(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, "kernel bank: bad hexadecimal float '" + s + "'");
  }
  return v;
}

template <class T>
T read(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw Error(ErrorKind::Parse, std::string("kernel bank: cannot read ") + what);
  return v;
}

void expect(std::istream& in, const std::string& word) {
  const auto got = read<std::string>(in, word.c_str());
  if (got != word) throw Error(ErrorKind::Parse, "kernel bank: expected '" + word + "', found '" + got + "'");
}

}  // namespace

void write_features_csv(std::ostream& out, const FeatureMatrix& features) {
  const Eigen::Index kernels = features.cols() / 2;
  for (Eigen::Index k = 0; k < kernels; ++k) {
    out << (k ? "," : "") << 'k' << k << "_ppv,k" << k << "_max";
  }
  out << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), features(i, j));
      if (j) out << ',';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

void save_bank(std::ostream& out, const KernelBank& bank) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "input_length " << bank.input_length << '\n';
  out << "input_channels " << bank.input_channels << '\n';
  out << "seed " << bank.seed << '\n';
  out << "stream " << (bank.stream_label.empty() ? "-" : bank.stream_label) << '\n';
  out << "kernels " << bank.kernels.size() << '\n';
  for (const Kernel& k : bank.kernels) {
    out << k.length << ' ' << k.dilation << ' ' << k.padding << ' ' << hex(k.bias) << ' ' << k.channels.size();
    for (std::size_t c : k.channels) out << ' ' << c;
    for (double w : k.weights) out << ' ' << hex(w);
    out << '\n';
  }
}

KernelBank load_bank(std::istream& in) {
  expect(in, kMagic);
  const int version = read<int>(in, "version");
  if (version != kVersion) throw Error(ErrorKind::Parse, "kernel bank: unsupported version " + std::to_string(version));
  KernelBank bank;
  expect(in, "input_length");
  bank.input_length = read<std::size_t>(in, "input length");
  expect(in, "input_channels");
  bank.input_channels = read<std::size_t>(in, "input channels");
  expect(in, "seed");
  bank.seed = read<std::uint64_t>(in, "seed");
  expect(in, "stream");
  bank.stream_label = read<std::string>(in, "stream label");
  if (bank.stream_label == "-") bank.stream_label.clear();
  expect(in, "kernels");
  const auto n = read<std::size_t>(in, "kernel count");
  bank.kernels.resize(n);
  for (Kernel& k : bank.kernels) {
    k.length = read<std::size_t>(in, "kernel length");
    k.dilation = read<std::size_t>(in, "dilation");
    k.padding = read<std::size_t>(in, "padding");
    k.bias = unhex(read<std::string>(in, "bias"));
    const auto rows = read<std::size_t>(in, "channel count");
    k.channels.resize(rows);
    for (auto& c : k.channels) {
      c = read<std::size_t>(in, "channel");
      if (c >= bank.input_channels) throw Error(ErrorKind::ChannelOutOfRange, "kernel bank: channel out of range");
    }
    k.weights.resize(rows * k.length);
    for (double& w : k.weights) w = unhex(read<std::string>(in, "weight"));
  }
  return bank;
}

}  // namespace mtsaug
