#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "lorhelix/frenet.hpp"

namespace lorhelix {

/// Helix classification carried in the JSON "meta" object.
struct CurveMeta {
  std::string helix_case;
  int epsilon = 0;
  double m = 0.0;
  double n = 0.0;
  double phi = 0.0;
};

enum class CurveFormat { Csv, Json };

/// Format from the file extension (.json, anything else is CSV).
CurveFormat format_for(const std::filesystem::path& path);

/// Round-trip-safe decimal form of a double (17 significant digits).
std::string format_number(double v);

/// CSV: header "s,x1,x2,x3" and, with frames, "Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz".
void write_csv(std::ostream& out, const CurveSamples& samples, bool with_frames);

/// Accepts 4 or 13 numeric columns with an optional header. Frames imply
/// epsilon and orientation. Throws Error(ParseError) on ragged or truncated rows.
CurveSamples read_csv(std::istream& in);

/// {"meta":{...}?, "epsilon":e, "orientation":o, "s":[...], "psi":[[x1,x2,x3],...],
///  "frames":[{"T":[...],"N":[...],"B":[...]},...]?}
void write_json(std::ostream& out, const CurveSamples& samples, const std::optional<CurveMeta>& meta,
                bool with_frames);

struct JsonCurve {
  CurveSamples samples;
  std::optional<CurveMeta> meta;
};

JsonCurve read_json(std::istream& in);

void save_curve(const std::filesystem::path& path, const CurveSamples& samples,
                const std::optional<CurveMeta>& meta, bool with_frames);
CurveSamples load_curve(const std::filesystem::path& path);

}  // namespace lorhelix
