#include "paedgl/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace paedgl {

namespace {

constexpr char kMagic[8] = {'P', 'A', 'E', 'D', 'G', 'L', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

void write_string(std::ofstream& out, std::string_view s) {
  write_pod(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
T read_pod(std::ifstream& in, const char* what) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError(std::string("checkpoint: truncated ") + what);
  return value;
}

std::string read_string(std::ifstream& in, const char* what) {
  const auto len = read_pod<std::uint32_t>(in, what);
  if (len > (1u << 20))
    throw ParseError(std::string("checkpoint: implausible ") + what +
                     " length");
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw ParseError(std::string("checkpoint: truncated ") + what);
  return s;
}

}  // namespace

void save_checkpoint(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint: " + path.string());

  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);

  const ModelFlags& f = model.flags();
  write_pod(out, static_cast<std::uint8_t>(f.position_mode));
  write_pod(out, static_cast<std::uint8_t>(f.use_pae_loss));
  write_pod(out, static_cast<std::uint8_t>(f.use_dgl));
  write_pod(out, static_cast<std::uint8_t>(f.order));

  const ModelDims& d = model.dims();
  write_pod(out, static_cast<std::int32_t>(d.window));
  write_pod(out, static_cast<std::uint64_t>(d.vocab));
  write_pod(out, static_cast<std::uint64_t>(d.word_dim));
  write_pod(out, static_cast<std::uint64_t>(d.pos_dim));
  write_pod(out, static_cast<std::uint64_t>(d.hidden));
  write_pod(out, static_cast<std::uint64_t>(d.max_doc_len));

  const auto& tokens = model.vocab().tokens();
  write_pod(out, static_cast<std::uint64_t>(tokens.size()));
  for (const std::string& t : tokens) write_string(out, t);

  const auto& entries = model.params().entries();
  write_pod(out, static_cast<std::uint64_t>(entries.size()));
  for (const auto& e : entries) {
    write_string(out, e.name);
    write_pod(out, static_cast<std::uint64_t>(e.value.rows));
    write_pod(out, static_cast<std::uint64_t>(e.value.cols));
    write_pod(out, static_cast<std::uint8_t>(e.is_weight));
    out.write(reinterpret_cast<const char*>(e.value.data.data()),
              static_cast<std::streamsize>(e.value.data.size() *
                                           sizeof(double)));
  }
  if (!out) throw IoError("checkpoint write failed: " + path.string());
}

Model load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path.string());

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ParseError("checkpoint: bad magic in " + path.string());
  const auto version = read_pod<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw ParseError("checkpoint: unsupported version " +
                     std::to_string(version) + " (expected " +
                     std::to_string(kVersion) + ")");

  ModelFlags flags;
  const auto mode = read_pod<std::uint8_t>(in, "position mode");
  if (mode > static_cast<std::uint8_t>(PositionMode::kPec))
    throw ParseError("checkpoint: invalid position mode");
  flags.position_mode = static_cast<PositionMode>(mode);
  flags.use_pae_loss = read_pod<std::uint8_t>(in, "flags") != 0;
  flags.use_dgl = read_pod<std::uint8_t>(in, "flags") != 0;
  const auto order = read_pod<std::uint8_t>(in, "order mode");
  if (order > static_cast<std::uint8_t>(OrderMode::kOriginal))
    throw ParseError("checkpoint: invalid order mode");
  flags.order = static_cast<OrderMode>(order);

  ModelDims dims;
  dims.window = read_pod<std::int32_t>(in, "window");
  dims.vocab = read_pod<std::uint64_t>(in, "vocab size");
  dims.word_dim = read_pod<std::uint64_t>(in, "word dim");
  dims.pos_dim = read_pod<std::uint64_t>(in, "pos dim");
  dims.hidden = read_pod<std::uint64_t>(in, "hidden");
  dims.max_doc_len = read_pod<std::uint64_t>(in, "max doc len");

  const auto token_count = read_pod<std::uint64_t>(in, "token count");
  if (token_count != dims.vocab)
    throw ParseError("checkpoint: token count disagrees with vocab size");
  std::vector<std::string> tokens;
  tokens.reserve(token_count);
  for (std::uint64_t i = 0; i < token_count; ++i)
    tokens.push_back(read_string(in, "token"));

  Model model(dims, flags, Vocabulary(std::move(tokens)));

  auto& entries = model.params().entries();
  const auto tensor_count = read_pod<std::uint64_t>(in, "tensor count");
  if (tensor_count != entries.size())
    throw CompatibilityError(
        "checkpoint: tensor count " + std::to_string(tensor_count) +
        " does not match model layout (" + std::to_string(entries.size()) +
        ")");
  for (auto& e : entries) {
    const std::string name = read_string(in, "tensor name");
    if (name != e.name)
      throw CompatibilityError("checkpoint: tensor '" + name +
                               "' where '" + e.name + "' expected");
    const auto rows = read_pod<std::uint64_t>(in, "tensor rows");
    const auto cols = read_pod<std::uint64_t>(in, "tensor cols");
    if (rows != e.value.rows || cols != e.value.cols)
      throw CompatibilityError("checkpoint: tensor '" + name +
                               "' shape mismatch");
    const bool is_weight = read_pod<std::uint8_t>(in, "weight flag") != 0;
    if (is_weight != e.is_weight)
      throw CompatibilityError("checkpoint: tensor '" + name +
                               "' weight flag mismatch");
    in.read(reinterpret_cast<char*>(e.value.data.data()),
            static_cast<std::streamsize>(e.value.data.size() *
                                         sizeof(double)));
    if (!in) throw ParseError("checkpoint: truncated tensor data");
  }
  // Must now be at EOF.
  char extra;
  in.read(&extra, 1);
  if (!in.eof())
    throw ParseError("checkpoint: trailing bytes in " + path.string());
  return model;
}

}  // namespace paedgl
