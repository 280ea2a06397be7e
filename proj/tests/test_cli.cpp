#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
    const std::string cmd = env + (env.empty() ? "" : " ") + TERNREC_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("ternrec_cli_" + name);
}

}  // namespace

TEST_CASE("analyze exit codes") {
    const Run t = run("analyze --preset tribonacci");
    CHECK(t.code == 0);
    CHECK(t.out.find("\"galois\": \"S3\"") != std::string::npos);
    CHECK(run("analyze --preset pow2-plus-fib").code == 0);
    CHECK(run("analyze --preset pow2-plus-n").code == 2);
    CHECK(run("analyze --preset square-pow").code == 2);
    CHECK(run("analyze --preset five-fib-sq-minus-4").code == 2);
    CHECK(run("analyze --preset fibonacci").code == 1);
    CHECK(run("analyze --preset lucas").code == 1);
    CHECK(run("analyze --spec '{\"a1\":1,\"a2\":1,\"a3\":0,\"u0\":0,\"u1\":0,\"u2\":1}'").code == 1);
}

TEST_CASE("primes table") {
    const Run r = run("primes --preset tribonacci --max 13");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("p,root_count,in_Z,alpha,t_p,k_p,ord_alpha,ord_ratio,mult_order\n", 0) == 0);
    CHECK(r.out.find("\n7,1,true,3,48,48,6,8,3\n") != std::string::npos);
    CHECK(r.out.find("\n13,1,true,7,168,168,12,14,3\n") != std::string::npos);
    const Run tiny = run("primes --preset tribonacci --max 2");
    CHECK(tiny.code == 0);
    CHECK(tiny.out == "p,root_count,in_Z,alpha,t_p,k_p,ord_alpha,ord_ratio,mult_order\n");
    CHECK(run("primes --preset tribonacci").code == 1);
    CHECK(run("primes --preset tribonacci --max 5000 --scan-states 10").code == 3);
}

TEST_CASE("count output and thread independence") {
    const Run one = run("count --preset tribonacci --x 300 --threads 1");
    REQUIRE(one.code == 0);
    CHECK(one.out.rfind("n,status,u,v,obstruction_p\n", 0) == 0);
    CHECK(one.out.find("\n13,member,6,6,\n") != std::string::npos);
    const Run many = run("count --preset tribonacci --x 300 --threads 4");
    CHECK(many.out == one.out);
    const Run env = run("count --preset tribonacci --x 300", "TERNARY_THREADS=3");
    CHECK(env.out == one.out);

    const auto summary = temp_file("summary.json");
    REQUIRE(run("count --preset tribonacci --x 100 --summary " + summary.string()).code == 0);
    std::ifstream in(summary);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"upper_density\"") != std::string::npos);
    std::filesystem::remove(summary);
}

TEST_CASE("config file and output file") {
    const auto cfg = temp_file("config.json");
    {
        std::ofstream out(cfg);
        out << R"({"spec": "pow2-plus-fib"})";
    }
    const auto dest = temp_file("out.csv");
    CHECK(run("primes --config " + cfg.string() + " --max 30 -o " + dest.string()).code == 0);
    std::ifstream in(dest);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("\n23,1,true,") != std::string::npos);
    std::filesystem::remove(cfg);
    std::filesystem::remove(dest);
}

TEST_CASE("verify and constants") {
    const Run c = run("constants");
    CHECK(c.code == 0);
    CHECK(c.out.find("kappa") != std::string::npos);
    CHECK(run("verify orders --preset tribonacci --param p_max=2000").code == 0);
    CHECK(run("verify z-density --preset tribonacci --param x=13").code == 2);
    CHECK(run("verify omega --preset tribonacci --param n=91 --param z3=2 --param y2=100 --param expect=2").code == 0);
    CHECK(run("verify omega --preset tribonacci --param n=91 --param z3=2 --param y2=100 --param expect=1").code == 2);
    CHECK(run("verify nonsense").code == 1);
}
