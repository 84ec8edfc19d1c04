#include <cmath>
#include <cstring>

#include "facinv/generator.hpp"
#include "facinv/grid_io.hpp"

namespace facinv {

namespace {

constexpr char kMagic[6] = {'F', 'A', 'C', 'G', 'E', 'N'};

class Writer {
 public:
  template <class T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void put_floats(const std::vector<float>& v) {
    for (float f : v) put(f);
  }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <class T>
  T get(const char* what) {
    need(sizeof(T), what);
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::vector<float> get_floats(std::size_t n, const char* what) {
    if (n > (bytes_.size() - pos_) / sizeof(float)) {
      throw FormatError(std::string("truncated FACGEN payload in ") + what);
    }
    std::vector<float> v(n);
    std::memcpy(v.data(), bytes_.data() + pos_, n * sizeof(float));
    pos_ += n * sizeof(float);
    for (float f : v)
      if (!std::isfinite(f)) throw FormatError(std::string("non-finite value in ") + what);
    return v;
  }
  std::string_view peek(std::size_t n) const { return bytes_.substr(pos_, n); }
  void skip(std::size_t n) { pos_ += n; }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n, const char* what) const {
    if (bytes_.size() - pos_ < n) throw FormatError(std::string("truncated FACGEN payload in ") + what);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_facgen(const GeneratorNetwork& network) {
  Writer w;
  w.raw(kMagic, sizeof(kMagic));
  w.put<std::uint16_t>(kFacgenVersion);
  const auto& s = network.input_shape();
  w.put(s.lx);
  w.put(s.ly);
  w.put(s.lz);
  w.put(s.channels);
  w.put<std::uint16_t>(static_cast<std::uint16_t>(network.layers().size()));
  for (const auto& l : network.layers()) {
    w.put(l.in_channels);
    w.put(l.out_channels);
    for (auto v : l.kernel) w.put(v);
    for (auto v : l.stride) w.put(v);
    for (auto v : l.padding) w.put(v);
    w.put(static_cast<std::uint8_t>(l.activation.kind));
    w.put(l.activation.alpha);
    w.put_floats(l.weights);
    w.put_floats(l.bias);
  }
  return w.take();
}

GeneratorNetwork decode_facgen(std::string_view bytes) {
  Reader r(bytes);
  if (r.peek(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw FormatError("not a FACGEN file (bad magic)");
  }
  r.skip(sizeof(kMagic));
  const auto version = r.get<std::uint16_t>("version");
  if (version != kFacgenVersion) {
    throw FormatError("unsupported FACGEN version " + std::to_string(version));
  }
  LatentShape shape;
  shape.lx = r.get<std::uint32_t>("input shape");
  shape.ly = r.get<std::uint32_t>("input shape");
  shape.lz = r.get<std::uint32_t>("input shape");
  shape.channels = r.get<std::uint32_t>("input shape");
  const auto count = r.get<std::uint16_t>("layer count");
  std::vector<TransposedConvLayer> layers(count);
  for (std::size_t n = 0; n < count; ++n) {
    auto& l = layers[n];
    l.in_channels = r.get<std::uint32_t>("layer header");
    l.out_channels = r.get<std::uint32_t>("layer header");
    for (auto& v : l.kernel) v = r.get<std::uint32_t>("layer header");
    for (auto& v : l.stride) v = r.get<std::uint32_t>("layer header");
    for (auto& v : l.padding) v = r.get<std::uint32_t>("layer header");
    const auto tag = r.get<std::uint8_t>("activation tag");
    if (tag > 2) throw FormatError("unknown activation tag " + std::to_string(tag));
    l.activation.kind = static_cast<ActivationKind>(tag);
    l.activation.alpha = r.get<float>("activation slope");
    std::size_t nw = 1;
    for (std::size_t f : {std::size_t{l.in_channels}, std::size_t{l.out_channels},
                          std::size_t{l.kernel[0]}, std::size_t{l.kernel[1]}, std::size_t{l.kernel[2]}}) {
      if (__builtin_mul_overflow(nw, f, &nw)) throw FormatError("weight block size overflows");
    }
    l.weights = r.get_floats(nw, "weight block");
    l.bias = r.get_floats(l.out_channels, "bias block");
  }
  if (!r.done()) throw FormatError("trailing bytes after FACGEN payload");
  return GeneratorNetwork(shape, std::move(layers));
}

GeneratorNetwork load_generator(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return decode_facgen(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ShapeError(path.string() + ": " + e.what());
  }
}

void save_generator(const GeneratorNetwork& network, const std::filesystem::path& path) {
  atomic_write(path, encode_facgen(network));
}

}  // namespace facinv
