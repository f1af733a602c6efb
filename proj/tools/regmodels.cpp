#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "regmodels/cli.hpp"
#include "regmodels/errors.hpp"

int main(int argc, char** argv) {
    using namespace regmodels;
    CLI::App app{"Regular and minimal normal-crossings models of superelliptic covers z^d = f(t)"};
    std::string command, input, format, base = "min";
    bool dump = false;
    app.add_option("command", command, "check | valuations | vreg | vmin | fiber | graph")->required();
    app.add_option("--input", input, "JSON spec file")->required();
    auto* fmt = app.add_option("--format", format, "text | json | dot");
    app.add_flag("--dump-stages", dump, "include the intermediate sets V1..V5");
    app.add_option("--base", base, "base for fiber and graph: reg | min")->check(CLI::IsMember({"reg", "min"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        cfg.command = parse_command(command);
        cfg.format = fmt->count() ? parse_format(format) : cfg.command == Command::Graph ? Format::Dot : Format::Text;
        cfg.dump_stages = dump;
        cfg.min_base = base == "min";
        std::ifstream in(input);
        if (!in) fail(ErrorKind::InvalidInput, "cannot read " + input);
        std::stringstream buf;
        buf << in.rdbuf();
        Cover cover = parse_input(buf.str());
        std::cout << run(cover, cfg);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
}
