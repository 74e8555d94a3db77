#include "asymtrunc/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

namespace {

constexpr char kMagic[4] = {'T', 'R', 'N', 'C'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& is, const char* what) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw FormatError(std::string("field header truncated while reading ") + what);
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

GridSpec checked_grid(std::vector<std::size_t> sizes, std::vector<double> spacings) {
  try {
    return GridSpec(std::move(sizes), std::move(spacings));
  } catch (const ValidationError& e) {
    throw FormatError(std::string("invalid field header: ") + e.what());
  }
}

ScalarField checked_field(GridSpec g, std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw FormatError("field payload contains a non-finite value");
  }
  return ScalarField(std::move(g), std::move(values));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw FormatError(std::string("cannot parse ") + what + " '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw FormatError(std::string("trailing characters in ") + what + " '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError("cannot parse grid size '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace

FieldFormat format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? FieldFormat::csv : FieldFormat::binary;
}

void write_field_binary(std::ostream& os, const ScalarField& u) {
  os.write(kMagic, 4);
  put_le<std::uint32_t>(os, kVersion);
  put_le<std::uint8_t>(os, static_cast<std::uint8_t>(u.grid.dims()));
  for (std::size_t a = 0; a < u.grid.dims(); ++a) {
    put_le<std::uint64_t>(os, u.grid.sizes[a]);
    put_le<double>(os, u.grid.spacings[a]);
  }
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(u.values.data()),
             static_cast<std::streamsize>(u.values.size() * sizeof(double)));
  } else {
    for (double v : u.values) put_le<double>(os, v);
  }
  if (!os) throw IoError("failed to write field payload");
}

ScalarField read_field_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4)) throw FormatError("field header truncated while reading magic");
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad magic: not a TRNC field file");
  const auto version = get_le<std::uint32_t>(is, "version");
  if (version != kVersion) throw FormatError("unsupported field version " + std::to_string(version));
  const auto dims = get_le<std::uint8_t>(is, "dims");
  if (dims < 1 || dims > kMaxDims) throw FormatError("invalid dimension " + std::to_string(dims));
  std::vector<std::size_t> sizes(dims);
  std::vector<double> spacings(dims);
  for (std::size_t a = 0; a < dims; ++a) {
    const auto n = get_le<std::uint64_t>(is, "axis size");
    if (n > (std::uint64_t{1} << 34)) throw FormatError("axis size too large");
    sizes[a] = static_cast<std::size_t>(n);
    spacings[a] = get_le<double>(is, "axis spacing");
  }
  GridSpec g = checked_grid(sizes, spacings);
  std::vector<double> values(g.cell_count());
  for (auto& v : values) {
    unsigned char bytes[8];
    if (!is.read(reinterpret_cast<char*>(bytes), 8)) {
      throw FormatError("payload size mismatch: expected " + std::to_string(g.cell_count()) +
                        " values");
    }
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + 8);
    std::memcpy(&v, bytes, 8);
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw FormatError("payload size mismatch: trailing bytes after " +
                      std::to_string(g.cell_count()) + " values");
  }
  return checked_field(std::move(g), std::move(values));
}

void write_field_csv(std::ostream& os, const ScalarField& u) {
  os << "# dims=" << u.grid.dims() << " sizes=";
  for (std::size_t a = 0; a < u.grid.dims(); ++a) os << (a ? "," : "") << u.grid.sizes[a];
  os << " spacings=";
  os << std::setprecision(17);
  for (std::size_t a = 0; a < u.grid.dims(); ++a) os << (a ? "," : "") << u.grid.spacings[a];
  os << '\n';
  for (double v : u.values) os << v << '\n';
  if (!os) throw IoError("failed to write csv field");
}

ScalarField read_field_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# ", 0) != 0) {
    throw FormatError("csv field must start with '# dims=... sizes=... spacings=...'");
  }
  std::size_t dims = 0;
  std::vector<std::size_t> sizes;
  std::vector<double> spacings;
  bool have_dims = false, have_sizes = false, have_spacings = false;
  std::stringstream hs(header.substr(2));
  std::string token;
  while (hs >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw FormatError("malformed csv header token '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string val = token.substr(eq + 1);
    if (key == "dims") {
      dims = parse_size(val);
      have_dims = true;
    } else if (key == "sizes") {
      for (const auto& s : split(val, ',')) sizes.push_back(parse_size(s));
      have_sizes = true;
    } else if (key == "spacings") {
      for (const auto& s : split(val, ',')) spacings.push_back(parse_double(s, "spacing"));
      have_spacings = true;
    } else {
      throw FormatError("unknown csv header key '" + key + "'");
    }
  }
  if (!have_dims || !have_sizes || !have_spacings) {
    throw FormatError("csv header needs dims, sizes and spacings");
  }
  if (sizes.size() != dims || spacings.size() != dims) {
    throw FormatError("csv header: sizes/spacings do not match dims");
  }
  GridSpec g = checked_grid(sizes, spacings);
  std::vector<double> values;
  values.reserve(g.cell_count());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const double v = parse_double(line, "value");
    if (!std::isfinite(v)) throw FormatError("field payload contains a non-finite value");
    values.push_back(v);
  }
  if (values.size() != g.cell_count()) {
    throw FormatError("payload size mismatch: expected " + std::to_string(g.cell_count()) +
                      " values, found " + std::to_string(values.size()));
  }
  return checked_field(std::move(g), std::move(values));
}

void write_field(const ScalarField& u, const std::filesystem::path& path, FieldFormat format) {
  std::ofstream os(path, format == FieldFormat::binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  if (format == FieldFormat::binary) {
    write_field_binary(os, u);
  } else {
    write_field_csv(os, u);
  }
}

void write_field(const ScalarField& u, const std::filesystem::path& path) {
  write_field(u, path, format_from_path(path));
}

ScalarField read_field(const std::filesystem::path& path, FieldFormat format) {
  std::ifstream is(path, format == FieldFormat::binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return format == FieldFormat::binary ? read_field_binary(is) : read_field_csv(is);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ScalarField read_field(const std::filesystem::path& path) {
  return read_field(path, format_from_path(path));
}

}  // namespace asymtrunc
