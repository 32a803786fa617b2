# argparse command-line front end
