#pragma once

#include <filesystem>
#include <iosfwd>

#include "asymtrunc/grid.hpp"

namespace asymtrunc {

enum class FieldFormat { binary, csv };

// ".csv" selects csv, anything else binary.
FieldFormat format_from_path(const std::filesystem::path& path);

// Binary layout: "TRNC", u32 version (1), u8 dims, per axis u64 size and f64
// spacing, then the f64 payload in row-major order. All little-endian. The
// origin is not stored; reading yields origin 0.
void write_field_binary(std::ostream& os, const ScalarField& u);
ScalarField read_field_binary(std::istream& is);

// "# dims=d sizes=a,b spacings=x,y" then one value per line (17 digits).
void write_field_csv(std::ostream& os, const ScalarField& u);
ScalarField read_field_csv(std::istream& is);

void write_field(const ScalarField& u, const std::filesystem::path& path, FieldFormat format);
void write_field(const ScalarField& u, const std::filesystem::path& path);
ScalarField read_field(const std::filesystem::path& path, FieldFormat format);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace asymtrunc
