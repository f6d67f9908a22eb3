#ifndef cdok_cli_serialize_hpp
#define cdok_cli_serialize_hpp

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdok/acdo.hpp"
#include "cdok/amcdoch.hpp"
#include "cdok/snippets.hpp"

namespace cdok::cli {

/*
 * Oracle file layout, all integers little-endian:
 *
 *   "CDOK" | u32 version | u32 kind | u32 sections
 *   sections x (u32 id | u64 offset | u64 size)
 *   section payloads
 *   u64 FNV-1a of every preceding byte
 *
 * Doubles are stored as their IEEE-754 bit pattern. Loading rebuilds the
 * per-color and range indexes; the expensive tables are read back as stored.
 */
inline constexpr std::uint32_t kFormatVersion = 1;

enum class OracleKind : std::uint32_t { points = 1, hierarchy = 2, text = 3 };

const char* to_string(OracleKind kind);
OracleKind parse_kind(std::string_view text);

/// Bad magic, version, checksum or section layout.
class CorruptFile : public Error {
public:
    using Error::Error;
};

/// Hierarchy oracle plus the map from the input file's colors to its own.
struct HierarchyBundle {
    HierarchyOracle oracle;
    std::vector<Color> alias;
};

using LoadedOracle = std::variant<CdoOracle, HierarchyBundle, TextIndex>;

std::string serialize(const CdoOracle& oracle);
std::string serialize(const HierarchyBundle& bundle);
std::string serialize(const TextIndex& index);

/// Throws CorruptFile.
LoadedOracle deserialize(std::string_view bytes);

std::uint64_t fnv1a(std::string_view bytes);

void write_file(const std::string& path, std::string_view bytes);
std::string read_file(const std::string& path);

}

#endif /* cdok_cli_serialize_hpp */
