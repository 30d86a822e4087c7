from sboxlab.cli import main

main()
