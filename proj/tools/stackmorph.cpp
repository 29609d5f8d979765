#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <stackmorph/stackmorph.hpp>
#include <stackmorph/verify/acceptance.hpp>

namespace sm = stackmorph;
namespace tk = stackmorph::toolkit;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_data = 1;
constexpr int exit_usage = 2;

std::uint64_t effective_seed( std::uint64_t flag )
{
  char const* env = std::getenv( "STACKMORPH_SEED" );
  if ( !env || !*env )
    return flag;
  char* end = nullptr;
  errno = 0;
  auto const v = std::strtoull( env, &end, 10 );
  if ( errno || *end || *env == '-' )
    throw sm::usage_error( std::string( "STACKMORPH_SEED is not an unsigned integer: '" ) + env + "'" );
  return v;
}

sm::io::PgmFormat parse_format( const std::string& s )
{
  if ( s == "p2" )
    return sm::io::PgmFormat::ascii;
  if ( s == "p5" )
    return sm::io::PgmFormat::binary;
  throw sm::usage_error( "format must be p2 or p5" );
}

void write_text( const std::string& path, const std::string& text )
{
  if ( path.empty() || path == "-" )
    std::cout << text;
  else
    sm::io::write_file( path, text );
}

struct ApplyArgs
{
  std::string input, output, builtin, op_file, window = "3x3", mode = "stack", border = "zero", asf_order = "oc",
                                                format = "p5";
  std::optional<int> m, threshold;
  int level = 1;
};

int run_apply( const ApplyArgs& a )
{
  auto img = sm::io::read_pgm( a.input );
  if ( a.m && *a.m != img.max_level() )
    throw sm::data_error( a.input + " has maxval " + std::to_string( img.max_level() ) + ", expected m = " +
                          std::to_string( *a.m ) );
  int const m = img.max_level();
  auto const border = tk::parse_border( a.border );

  std::vector<sm::SetOperator> chain;
  if ( !a.builtin.empty() )
    chain = tk::builtin( a.builtin, tk::parse_window( a.window ), tk::parse_asf_order( a.asf_order ) );
  else
  {
    auto rec = sm::io::read_operator( sm::io::read_file( a.op_file ) );
    if ( a.mode == "stack" && rec.max_level != m )
      throw sm::data_error( "operator file has m = " + std::to_string( rec.max_level ) + ", image has maxval " +
                            std::to_string( m ) );
    chain.push_back( std::move( rec.op ) );
  }

  sm::GreyImage out;
  if ( a.mode == "set" )
  {
    if ( a.level < 1 || a.level > m )
      throw sm::usage_error( "--level must be in 1.." + std::to_string( m ) );
    out = sm::embed( tk::run_set_chain( chain, sm::cross_section( img, a.level ), border ), m );
  }
  else
    out = tk::run_stack_chain( chain, std::move( img ), border );

  if ( a.threshold )
  {
    if ( *a.threshold < 1 || *a.threshold > m )
      throw sm::usage_error( "--threshold must be in 1.." + std::to_string( m ) );
    out = sm::embed( sm::cross_section( out, *a.threshold ), m );
  }
  sm::io::write_pgm( out, a.output, parse_format( a.format ) );
  return exit_ok;
}

int run_props( const std::string& file, std::optional<int> verify_m )
{
  auto const rec = sm::io::read_operator( sm::io::read_file( file ) );
  std::cout << "window: " << rec.op.window().to_string() << '\n';
  std::cout << sm::check_structural( rec.op ).render();
  if ( !verify_m )
    return exit_ok;
  auto const rep = sm::verify_stack_inheritance( rec.op, *verify_m );
  std::cout << "\nstack extension, m = " << *verify_m << '\n' << rep.render();
  std::cout << ( rep.all_match() ? "inheritance: all flags match\n" : "inheritance: MISMATCH\n" );
  return rep.all_match() ? exit_ok : exit_data;
}

int run_basis( const std::string& file, bool from, const std::string& out )
{
  auto const text = sm::io::read_file( file );
  if ( !from )
  {
    auto const rec = sm::io::read_operator( text );
    write_text( out, sm::io::write_basis( sm::basis_of( sm::kernel_of( rec.op ) ), rec.max_level ) );
    return exit_ok;
  }
  auto const rec = sm::io::read_basis( text );
  if ( !rec.grey_levels.empty() )
    throw sm::data_error( "basis --from needs a binary basis, got grey intervals" );
  sm::SetBasis const b{ rec.window, rec.set_intervals };
  write_text( out, sm::io::write_operator( sm::operator_from_basis( b ), rec.max_level ) );
  return exit_ok;
}

int run_stack_basis( const std::string& file, std::optional<int> t, std::optional<int> m_flag, bool hull,
                     double cap, const std::string& out )
{
  auto const rec = sm::io::read_operator( sm::io::read_file( file ) );
  int const m = m_flag.value_or( rec.max_level );
  if ( m < 1 || m > 65535 )
    throw sm::usage_error( "--m must be in 1..65535" );
  if ( t && ( *t < 1 || *t > m ) )
    throw sm::usage_error( "--t must be in 1.." + std::to_string( m ) );
  auto const basis = sm::basis_of( sm::kernel_of( rec.op ) );
  int const first = t.value_or( 1 ), last = t.value_or( m );

  std::vector<sm::GreyBasis> levels;
  for ( int level = first; level <= last; ++level )
  {
    if ( hull )
    {
      sm::GreyBasis g{ basis.window, m, level, {} };
      for ( auto const& iv : basis.intervals )
        g.intervals.push_back( sm::single_interval_hull( iv, m, level ) );
      levels.push_back( std::move( g ) );
    }
    else
      levels.push_back( sm::stack_basis_level( basis, m, level, cap ) );
  }
  write_text( out, sm::io::write_basis( levels ) );
  return exit_ok;
}

int run_filter_check( const std::string& file, std::optional<int> m_flag, int trials, std::uint64_t seed )
{
  auto const rec = sm::io::read_operator( sm::io::read_file( file ) );
  int const m = m_flag.value_or( rec.max_level );
  auto const res = sm::check_stack_filter( rec.op, m, trials, effective_seed( seed ) );
  if ( res.is_filter )
  {
    std::cout << "stack filter: yes (m = " << m << ")\n";
    return exit_ok;
  }
  auto const& w = *res.witness;
  std::cout << "stack filter: no (m = " << m << ")\n";
  std::cout << "witness: level " << w.level << " at pixel (" << w.x << "," << w.y << ") of a " << w.image.width()
            << "x" << w.image.height() << " image\n";
  auto const out = sm::apply_stack( sm::StackOperator( rec.op, m ), w.image );
  auto const section = sm::apply_set( rec.op, sm::cross_section( w.image, w.level ) );
  std::cout << "stack output " << out( w.x, w.y ) << ", set output on the cross-section " << int( section( w.x, w.y ) )
            << '\n';
  std::cout << sm::io::encode_pgm( w.image, sm::io::PgmFormat::ascii );
  return exit_ok;
}

int run_verify( const std::vector<int>& only )
{
  std::vector<int> ids = only;
  if ( ids.empty() )
    ids = { 1, 2, 3, 4, 5, 6, 7, 8, 9 };
  auto const start = std::chrono::steady_clock::now();
  int passed = 0;
  for ( int id : ids )
  {
    auto const r = sm::verify::run_criterion( id );
    std::cout << r.render() << std::endl;
    passed += r.passed();
  }
  double const total = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  bool const ok = passed == static_cast<int>( ids.size() ) && total < sm::verify::total_time_limit;
  std::printf( "verify: %d of %zu passed in %.1f s (limit %.0f s)\n", passed, ids.size(), total,
               sm::verify::total_time_limit );
  return ok ? exit_ok : exit_data;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "stackmorph: set and stack W-operators on PGM images" };
  app.require_subcommand( 1 );

  ApplyArgs apply;
  auto* c_apply = app.add_subcommand( "apply", "apply a builtin or an operator file to a PGM image" );
  c_apply->add_option( "input", apply.input, "input PGM" )->required();
  c_apply->add_option( "output", apply.output, "output PGM" )->required();
  auto* o_builtin = c_apply->add_option( "--builtin", apply.builtin, "erosion, dilation, opening, closing, asf, median, boundary, identity, complement" );
  auto* o_op = c_apply->add_option( "--op", apply.op_file, "operator file" );
  o_builtin->excludes( o_op );
  c_apply->add_option( "--window", apply.window, "3x3, 5x5, RxC, cross, line3, vline3 or \"(dy,dx) ...\"" )
      ->capture_default_str();
  c_apply->add_option( "--mode", apply.mode )->check( CLI::IsMember( { "set", "stack" } ) )->capture_default_str();
  c_apply->add_option( "--border", apply.border )
      ->check( CLI::IsMember( { "zero", "replicate", "crop" } ) )
      ->capture_default_str();
  c_apply->add_option( "--m", apply.m, "expected maxval" );
  c_apply->add_option( "--threshold", apply.threshold, "binarize the output at this level" );
  c_apply->add_option( "--asf-order", apply.asf_order )->check( CLI::IsMember( { "oc", "co" } ) )->capture_default_str();
  c_apply->add_option( "--level", apply.level, "set mode reads the input cross-section at this level" )
      ->capture_default_str();
  c_apply->add_option( "--format", apply.format )->check( CLI::IsMember( { "p2", "p5" } ) )->capture_default_str();

  std::string props_file;
  std::optional<int> props_m;
  auto* c_props = app.add_subcommand( "props", "property table of an operator file" );
  c_props->add_option( "op", props_file )->required();
  c_props->add_option( "--verify-stack", props_m, "compare with grey-side brute force at this m" )
      ->check( CLI::Range( 1, 65535 ) );

  std::string basis_file, basis_out;
  bool basis_from = false;
  auto* c_basis = app.add_subcommand( "basis", "operator file to basis file, or back with --from" );
  c_basis->add_option( "input", basis_file )->required();
  c_basis->add_flag( "--from", basis_from, "input is a basis file; write the operator file" );
  c_basis->add_option( "-o,--output", basis_out, "output file (default stdout)" );

  std::string sb_file, sb_out;
  std::optional<int> sb_t, sb_m;
  bool sb_hull = false;
  double sb_cap = sm::default_enumeration_cap;
  auto* c_sb = app.add_subcommand( "stack-basis", "grey basis of the stack kernel levels" );
  c_sb->add_option( "op", sb_file )->required();
  c_sb->add_option( "--t", sb_t, "level (default: every level)" );
  c_sb->add_option( "--m", sb_m, "max level (default: the file's m)" );
  c_sb->add_flag( "--hull", sb_hull, "write [tX, tY+(m-t)W] for each set interval instead of the exact basis" );
  c_sb->add_option( "--cap", sb_cap, "largest grey enumeration allowed" )->capture_default_str();
  c_sb->add_option( "-o,--output", sb_out );

  std::string fc_file;
  std::optional<int> fc_m;
  int fc_trials = 32;
  std::uint64_t fc_seed = 1;
  auto* c_fc = app.add_subcommand( "filter-check", "does the stack extension commute with thresholding" );
  c_fc->add_option( "op", fc_file )->required();
  c_fc->add_option( "--m", fc_m )->check( CLI::Range( 1, 65535 ) );
  c_fc->add_option( "--trials", fc_trials )->check( CLI::PositiveNumber )->capture_default_str();
  c_fc->add_option( "--seed", fc_seed )->capture_default_str();

  std::string nz_in, nz_out, nz_format = "p5";
  double nz_p = 0.025;
  std::uint64_t nz_seed = 1;
  auto* c_noise = app.add_subcommand( "noise", "salt-and-pepper corruption" );
  c_noise->add_option( "input", nz_in )->required();
  c_noise->add_option( "output", nz_out )->required();
  c_noise->add_option( "--p", nz_p )->check( CLI::Range( 0.0, 1.0 ) )->capture_default_str();
  c_noise->add_option( "--seed", nz_seed )->capture_default_str();
  c_noise->add_option( "--format", nz_format )->check( CLI::IsMember( { "p2", "p5" } ) )->capture_default_str();

  std::string cp_config, cp_in, cp_out, cp_format = "p5";
  auto* c_compose = app.add_subcommand( "compose", "run a pipeline file on a PGM image" );
  c_compose->add_option( "config", cp_config )->required();
  c_compose->add_option( "input", cp_in )->required();
  c_compose->add_option( "output", cp_out )->required();
  c_compose->add_option( "--format", cp_format )->check( CLI::IsMember( { "p2", "p5" } ) )->capture_default_str();

  std::vector<std::string> tr_inputs, tr_targets;
  std::string tr_window = "3x3", tr_border = "zero", tr_out;
  int tr_level = 1, tr_m = 255;
  auto* c_train = app.add_subcommand( "train", "majority-vote operator from image pairs" );
  c_train->add_option( "--input", tr_inputs, "input PGM (repeat, paired with --target)" );
  c_train->add_option( "--target", tr_targets, "target PGM" );
  c_train->add_option( "--window", tr_window )->capture_default_str();
  c_train->add_option( "--border", tr_border )
      ->check( CLI::IsMember( { "zero", "replicate", "crop" } ) )
      ->capture_default_str();
  c_train->add_option( "--level", tr_level, "images are binarized at this level" )->capture_default_str();
  c_train->add_option( "--m", tr_m, "m recorded in the operator file" )->check( CLI::Range( 1, 65535 ) )->capture_default_str();
  c_train->add_option( "-o,--output", tr_out );

  std::vector<int> vf_only;
  auto* c_verify = app.add_subcommand( "verify", "run the desk-scale acceptance suites" );
  c_verify->add_option( "--criterion", vf_only, "run only these (1..9)" )->check( CLI::Range( 1, 9 ) );

  std::string f1_dir;
  tk::Figure1Config f1;
  std::string f1_order = "oc", f1_border = "replicate";
  auto* c_f1 = app.add_subcommand( "figure1", "write input, noise, boundary, ASF and composed panels" );
  c_f1->add_option( "outdir", f1_dir )->required();
  c_f1->add_option( "--size", f1.size )->check( CLI::Range( 16, 4096 ) )->capture_default_str();
  c_f1->add_option( "--m", f1.max_level )->check( CLI::Range( 1, 65535 ) )->capture_default_str();
  c_f1->add_option( "--seed", f1.seed )->capture_default_str();
  c_f1->add_option( "--p", f1.noise )->check( CLI::Range( 0.0, 1.0 ) )->capture_default_str();
  c_f1->add_option( "--asf-order", f1_order )->check( CLI::IsMember( { "oc", "co" } ) )->capture_default_str();
  c_f1->add_option( "--border", f1_border )
      ->check( CLI::IsMember( { "zero", "replicate", "crop" } ) )
      ->capture_default_str();

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::CallForHelp& e )
  {
    return app.exit( e );
  }
  catch ( const CLI::CallForAllHelp& e )
  {
    return app.exit( e );
  }
  catch ( const CLI::ParseError& e )
  {
    app.exit( e );
    return exit_usage;
  }

  try
  {
    if ( *c_apply )
    {
      if ( apply.builtin.empty() == apply.op_file.empty() )
        throw sm::usage_error( "apply needs exactly one of --builtin or --op" );
      return run_apply( apply );
    }
    if ( *c_props )
      return run_props( props_file, props_m );
    if ( *c_basis )
      return run_basis( basis_file, basis_from, basis_out );
    if ( *c_sb )
      return run_stack_basis( sb_file, sb_t, sb_m, sb_hull, sb_cap, sb_out );
    if ( *c_fc )
      return run_filter_check( fc_file, fc_m, fc_trials, fc_seed );
    if ( *c_noise )
    {
      auto const img = sm::io::read_pgm( nz_in );
      sm::io::write_pgm( tk::salt_pepper( img, nz_p, effective_seed( nz_seed ) ), nz_out, parse_format( nz_format ) );
      return exit_ok;
    }
    if ( *c_compose )
    {
      auto cfg = tk::parse_pipeline( sm::io::read_file( cp_config ),
                                     std::filesystem::path( cp_config ).parent_path().string() );
      cfg.seed = effective_seed( cfg.seed );
      sm::io::write_pgm( tk::run_pipeline( cfg, sm::io::read_pgm( cp_in ) ), cp_out, parse_format( cp_format ) );
      return exit_ok;
    }
    if ( *c_train )
    {
      if ( tr_inputs.size() != tr_targets.size() )
        throw sm::usage_error( "train needs as many --target images as --input images" );
      std::vector<tk::TrainingPair> pairs;
      for ( std::size_t i = 0; i < tr_inputs.size(); ++i )
      {
        auto const in = sm::io::read_pgm( tr_inputs[i] );
        auto const target = sm::io::read_pgm( tr_targets[i] );
        if ( tr_level > in.max_level() || tr_level > target.max_level() || tr_level < 1 )
          throw sm::usage_error( "--level exceeds an image maxval" );
        pairs.push_back( { sm::cross_section( in, tr_level ), sm::cross_section( target, tr_level ) } );
      }
      auto const op = tk::train_majority( pairs, tk::parse_window( tr_window ), tk::parse_border( tr_border ) );
      write_text( tr_out, sm::io::write_operator( op, tr_m ) );
      return exit_ok;
    }
    if ( *c_verify )
      return run_verify( vf_only );
    if ( *c_f1 )
    {
      f1.order = tk::parse_asf_order( f1_order );
      f1.border = tk::parse_border( f1_border );
      f1.seed = effective_seed( f1.seed );
      for ( auto const& path : tk::write_figure1( f1_dir, f1 ) )
        std::cout << path << '\n';
      return exit_ok;
    }
  }
  catch ( const sm::usage_error& e )
  {
    std::cerr << "stackmorph: " << e.what() << '\n';
    return exit_usage;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "stackmorph: " << e.what() << '\n';
    return exit_data;
  }
  return exit_usage;
}
