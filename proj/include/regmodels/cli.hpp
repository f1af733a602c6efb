#pragma once

#include <string>

#include "regmodels/fiber.hpp"

namespace regmodels {

enum class Command { Check, Valuations, VReg, VMin, Fiber, Graph };
enum class Format { Text, Json, Dot };

struct RunConfig {
    Command command = Command::Check;
    Format format = Format::Text;
    bool dump_stages = false;
    bool min_base = true;  // fiber and graph: V_min, else V_reg
};

Command parse_command(const std::string& name);  // InvalidInput on unknown names
Format parse_format(const std::string& name);

// {"p": 3, "d": 5, "pi_exponent": 0, "factors": [[[-1, 1], 2], ...]}, coefficients lowest degree
// first as integers or "num/den" strings. ParseError on malformed text.
CoverSpec parse_spec(const std::string& text);
Cover parse_input(const std::string& text);

// Runs the requested stage; throws Error on failure. Output ends with a newline.
std::string run(const Cover& cover, const RunConfig& config);

// Vertex labels "valuation | mult | self-int"; vertices sorted by valuation string, then lift.
std::string emit_dot(const FiberGraph& graph);

}  // namespace regmodels
