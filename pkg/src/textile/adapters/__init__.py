# Front ends (command line)
