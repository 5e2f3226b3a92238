// hipjerk: acquire orientation streams and score hip-rotation fluency.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hipjerk/hipjerk.hpp"

namespace {

using namespace hipjerk;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
}

Session load_with_dt(const std::string& path, const std::optional<double>& dt) {
  Session s = load_session(path);
  if (dt) {
    if (!(*dt > 0.0)) throw Error(ErrorCode::InvalidInput, "--dt must be positive");
    s.dt = *dt;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hip-rotation fluency from smartphone orientation streams"};
  app.require_subcommand(1);

  std::string convention_text = "intrinsic:ZYX";
  std::string format_text = "text";
  const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text},
                                                    {"structured", OutputFormat::Structured}};
  auto add_convention = [&](CLI::App* cmd) {
    cmd->add_option("--convention", convention_text, "Euler axis order, e.g. ZYX or extrinsic:XYZ")
        ->capture_default_str();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_text, "Report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };

  // listen
  ListenConfig listen_cfg;
  std::string listen_out = "session.csv";
  auto* listen_cmd = app.add_subcommand("listen", "Acquire a UDP stream, save it and report");
  listen_cmd->add_option("--port", listen_cfg.port, "UDP port on 0.0.0.0")->capture_default_str();
  listen_cmd->add_option("--buffer-size", listen_cfg.buffer_size, "Stop after this many characters")
      ->capture_default_str();
  listen_cmd->add_option("--timeout", listen_cfg.timeout, "Stop after this many seconds")
      ->capture_default_str();
  listen_cmd->add_option("--dt", listen_cfg.dt, "Device sampling period, seconds")->capture_default_str();
  listen_cmd->add_option("--out", listen_out, "Session file to write")->capture_default_str();
  add_convention(listen_cmd);
  add_format(listen_cmd);

  // compute
  std::string session_path;
  std::optional<double> dt_override;
  std::string report_out;
  auto* compute_cmd = app.add_subcommand("compute", "Jerk index of a saved session");
  compute_cmd->add_option("session", session_path, "Session file")->required();
  compute_cmd->add_option("--dt", dt_override, "Override the session's sampling period");
  compute_cmd->add_option("--out", report_out, "Report file (default stdout)");
  add_convention(compute_cmd);
  add_format(compute_cmd);

  // simulate
  WalkParams walk;
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a synthetic session");
  sim_cmd->add_option("--n", walk.n, "Sample count")->capture_default_str();
  sim_cmd->add_option("--dt", walk.dt, "Sampling period, seconds")->capture_default_str();
  sim_cmd->add_option("--seed", walk.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--base-rate", walk.base_rate, "Drift rate, rad/s")->capture_default_str();
  sim_cmd->add_option("--noise-amp", walk.noise_amp, "Per-step perturbation bound, rad")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "Session file (default stdout)");
  add_convention(sim_cmd);

  // replay
  ReplayTarget target;
  std::size_t chunk = 1;
  std::optional<double> replay_dt;
  auto* replay_cmd = app.add_subcommand("replay", "Send a session over UDP like the phone would");
  replay_cmd->add_option("session", session_path, "Session file")->required();
  replay_cmd->add_option("--host", target.host, "Destination host")->capture_default_str();
  replay_cmd->add_option("--port", target.port, "Destination port")->capture_default_str();
  replay_cmd->add_option("--dt", replay_dt, "Pacing per record, seconds (default: session dt)");
  replay_cmd->add_option("--chunk", chunk, "Records per datagram")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // plotdata
  std::string plot_out;
  auto* plot_cmd = app.add_subcommand("plotdata", "Time and unwrapped angles in radians as CSV");
  plot_cmd->add_option("session", session_path, "Session file")->required();
  plot_cmd->add_option("--dt", dt_override, "Override the session's sampling period");
  plot_cmd->add_option("--out", plot_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_status::kOk : exit_status::kUsage;
  }

  try {
    const EulerConvention convention = EulerConvention::parse(convention_text);
    const OutputFormat format = formats.at(format_text);

    if (listen_cmd->parsed()) {
      UdpListener listener(listen_cfg);
      std::cerr << "listening on 0.0.0.0:" << listener.port() << " for up to " << listen_cfg.timeout
                << " s or " << listen_cfg.buffer_size << " characters\n";
      const Acquisition acq = acquire(listener);
      std::cerr << "received " << acq.datagrams << " datagrams (" << acq.bytes
                << " bytes), stopped on " << to_string(acq.termination) << "\n";
      save_session(acq.session, listen_out);
      std::cerr << "saved " << acq.session.records.size() << " records to " << listen_out << "\n";
      std::cout << render(compute_report(acq.session, convention), format);
    } else if (compute_cmd->parsed()) {
      const Session s = load_with_dt(session_path, dt_override);
      write_output(render(compute_report(s, convention), format), report_out);
    } else if (sim_cmd->parsed()) {
      write_output(format_session(simulate_session(walk, convention)), sim_out);
    } else if (replay_cmd->parsed()) {
      const Session s = load_session(session_path);
      const ReplayStats stats = replay(s.records, target, replay_dt.value_or(s.dt), chunk);
      std::cerr << "sent " << stats.records << " records in " << stats.datagrams << " datagrams to "
                << target.host << ":" << target.port << "\n";
    } else if (plot_cmd->parsed()) {
      write_output(plot_data(load_with_dt(session_path, dt_override)), plot_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_status_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_status::kInternal;
  }
  return exit_status::kOk;
}
