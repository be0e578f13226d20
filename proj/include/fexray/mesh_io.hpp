#pragma once

#include "fexray/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace fexray {

// Plain-text formats, see docs/formats.md. Readers throw ParseError naming the
// source and line; the mesh itself is validated after parsing.

Mesh read_mesh(std::istream& in, const std::string& source = "<mesh>");
Mesh read_mesh_file(const std::filesystem::path& path);
void write_mesh(std::ostream& out, const Mesh& mesh);
void write_mesh_file(const std::filesystem::path& path, const Mesh& mesh);

NodalField read_field(std::istream& in, const std::string& source = "<field>");
NodalField read_field_file(const std::filesystem::path& path);
void write_field(std::ostream& out, const NodalField& field);
void write_field_file(const std::filesystem::path& path, const NodalField& field);

}  // namespace fexray
