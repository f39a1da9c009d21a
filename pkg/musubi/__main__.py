from musubi.launcher import main

main(prog_name="musubi")
