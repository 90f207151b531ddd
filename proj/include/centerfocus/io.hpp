#pragma once

#include "centerfocus/exactify.hpp"
#include "centerfocus/witness.hpp"

#include <iosfwd>

namespace centerfocus {

// Text formats. Headers are "# key value..." lines; polynomials use the
// polycore term format; high-precision point coordinates are written as
// hex floats so files round-trip bit-exactly.

void write_system(std::ostream& os, const std::vector<Poly>& polys,
                  const std::vector<std::string>& vars);
struct SystemFile {
    std::vector<std::string> vars;
    std::vector<Poly> polys;
    std::vector<std::map<std::string, std::string>> annotations;  // per-poly headers
};
SystemFile read_system(std::istream& is);

void write_points(std::ostream& os, const std::vector<Point>& pts,
                  const std::vector<std::string>& vars);
std::vector<Point> read_points(std::istream& is);

void write_path_results(std::ostream& os, const std::vector<PathResult>& results,
                        const std::vector<std::string>& vars);

void write_witness_set(std::ostream& os, const WitnessSet& ws);
WitnessSet read_witness_set(std::istream& is);

void write_component(std::ostream& os, const ComponentRecord& rec);
ComponentRecord read_component(std::istream& is);

std::string point_to_text(const Point& p);
Point point_from_text(const std::string& line);

// simple key = value configuration text
std::map<std::string, std::string> read_config_file(const std::string& path);

// file helpers
void write_text_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);

}  // namespace centerfocus
